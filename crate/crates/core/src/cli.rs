//! Command-line front end.
//!
//! [`run`] never prints or exits; it returns an [`Outcome`] so the binary
//! and the tests share one code path. Exit codes: 0 success, 1 self-test
//! failure, 2 usage error, 3 domain error.

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::parser::ValueSource;
use clap::{ArgGroup, ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactmath::BernoulliTable;
use crate::forms::{
    canonical_pair, normalized_canonical_pair, orbit_count_pairs_bruteforce,
    orbit_count_pairs_formula, oriented_equivalent, unoriented_equivalent, ExtSymForm,
    HyperbolicSign, MarkingTarget,
};
use crate::jdata::dimension_data;
use crate::manifolds::{
    almost_diffeomorphic, enumerate_stable_class, homotopy_equivalent, homotopy_ext_form,
    homotopy_family_detailed, n4k_enumerate_stable_class, n4k_homotopy_equivalent,
    n4k_stably_diffeomorphic, n4k_witness_family, smooth_ext_form, stably_almost_diffeomorphic,
    wall_invariants, FourKManifold, WallManifold,
};
use crate::selftest;
use crate::spinc::{self, SpinCClass};

pub const SCHEMA_VERSION: &str = "1";

/// Largest modulus for which `oracle orbit-count` also runs the brute force.
const BRUTE_FORCE_LIMIT: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub verb: String,
    pub subverb: Option<String>,
    /// Flags as given on the command line.
    pub args: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: String,
    pub command: CommandEcho,
    pub result: Value,
    /// Derived constants the result depends on, as decimal strings.
    pub provenance: BTreeMap<String, String>,
}

#[derive(Parser, Debug)]
#[command(name = "manifold-census", version, about = "Exact invariants of highly connected manifolds")]
struct Cli {
    /// Emit a JSON envelope.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table (default).
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Bernoulli number B_n, positive convention (B_1 = 1/6).
    Bernoulli {
        #[arg(long)]
        n: u32,
    },
    /// Order j_m of the image of J in dimension 4m - 1.
    JOrder {
        #[arg(long)]
        m: u32,
    },
    /// Order of the group of homotopy spheres bounding parallelizable 8m-manifolds.
    BpOrder {
        #[arg(long)]
        m: u32,
    },
    /// (n-1)-connected 2n-manifolds with hyperbolic intersection form, n = 4m.
    #[command(subcommand)]
    Wall(WallOp),
    /// 4k-manifolds with coprime cohomology data (a, b).
    #[command(subcommand, name = "n4k")]
    N4k(N4kOp),
    /// Spin^c structures on S2 x S2.
    #[command(subcommand)]
    Spinc(SpincOp),
    /// Extended symmetric forms over the hyperbolic plane.
    #[command(subcommand)]
    Form(FormOp),
    /// Reference computations.
    #[command(subcommand)]
    Oracle(OracleOp),
    /// Run the bundled acceptance checks.
    Selftest {
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Fault {
    Bernoulli,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("first").required(true).args(["alpha", "a"])))]
struct WallArgs {
    #[arg(long)]
    m: u32,
    /// Obstruction value α.
    #[arg(long, value_parser = parse_uint, requires = "beta", conflicts_with_all = ["a", "b"])]
    alpha: Option<BigUint>,
    #[arg(long, value_parser = parse_uint, requires = "alpha")]
    beta: Option<BigUint>,
    /// Construction value a, so that α = a·c_m.
    #[arg(long, value_parser = parse_uint, requires = "b")]
    a: Option<BigUint>,
    #[arg(long, value_parser = parse_uint, requires = "a", conflicts_with = "beta")]
    b: Option<BigUint>,
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true, default_value = "+")]
    orientation: HyperbolicSign,
    /// Replaces the default bp_m in every validity check.
    #[arg(long, value_parser = parse_uint)]
    bp: Option<BigUint>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("second").required(true).args(["alpha2", "a2"])))]
struct WallCompareArgs {
    #[command(flatten)]
    first: WallArgs,
    #[arg(long, value_parser = parse_uint, requires = "beta2", conflicts_with_all = ["a2", "b2"])]
    alpha2: Option<BigUint>,
    #[arg(long, value_parser = parse_uint, requires = "alpha2")]
    beta2: Option<BigUint>,
    #[arg(long, value_parser = parse_uint, requires = "b2")]
    a2: Option<BigUint>,
    #[arg(long, value_parser = parse_uint, requires = "a2", conflicts_with = "beta2")]
    b2: Option<BigUint>,
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true, default_value = "+")]
    orientation2: HyperbolicSign,
    /// Relation to test; all three when omitted.
    #[arg(long, value_enum)]
    relation: Option<WallRelation>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WallRelation {
    Homotopy,
    AlmostDiffeo,
    Stable,
}

#[derive(Subcommand, Debug)]
enum WallOp {
    Invariants(WallArgs),
    Compare(WallCompareArgs),
    Enumerate(WallArgs),
    Bounds(WallArgs),
}

#[derive(Subcommand, Debug)]
enum N4kOp {
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_uint)]
        product: BigUint,
    },
    Witness {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    Compare {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_pair::<BigUint>, allow_hyphen_values = true)]
        pair1: Pair<BigUint>,
        #[arg(long, value_parser = parse_pair::<BigUint>, allow_hyphen_values = true)]
        pair2: Pair<BigUint>,
        #[arg(long, value_enum)]
        relation: N4kRelation,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum N4kRelation {
    Homotopy,
    Stable,
}

#[derive(Subcommand, Debug)]
enum SpincOp {
    Census {
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        c1sq: BigInt,
    },
    Orbits {
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        c1sq: BigInt,
    },
    Compare {
        #[arg(long, value_parser = parse_pair::<BigInt>, allow_hyphen_values = true)]
        s1: Pair<BigInt>,
        #[arg(long, value_parser = parse_pair::<BigInt>, allow_hyphen_values = true)]
        s2: Pair<BigInt>,
        #[arg(long, value_enum)]
        relation: SpincRelation,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SpincRelation {
    Equiv,
    Stable,
}

#[derive(Subcommand, Debug)]
enum FormOp {
    Equiv {
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign1: HyperbolicSign,
        #[arg(long, value_parser = parse_pair::<BigInt>, allow_hyphen_values = true)]
        f1: Pair<BigInt>,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign2: HyperbolicSign,
        #[arg(long, value_parser = parse_pair::<BigInt>, allow_hyphen_values = true)]
        f2: Pair<BigInt>,
        /// 0 for the integers.
        #[arg(long, value_parser = parse_uint)]
        modulus: BigUint,
        /// Also allow orientation-reversing equivalences.
        #[arg(long)]
        reversal: bool,
        /// Attach the nonzero stable tangential invariant to both forms.
        #[arg(long)]
        v_nonzero: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleOp {
    OrbitCount {
        #[arg(long, value_parser = parse_uint)]
        modulus: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pair<T>(T, T);

fn parse_uint(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s.trim()).map_err(|_| format!("expected a non-negative integer, got {s:?}"))
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("expected an integer, got {s:?}"))
}

fn parse_sign(s: &str) -> Result<HyperbolicSign, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

fn parse_pair<T: FromStr>(s: &str) -> Result<Pair<T>, String> {
    let bad = || format!("expected a pair `x,y` of integers, got {s:?}");
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x = x.trim().parse().map_err(|_| bad())?;
    let y = y.trim().parse().map_err(|_| bad())?;
    Ok(Pair(x, y))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Payload = (Value, BTreeMap<String, String>);

fn error_object(code: &str, message: &str) -> String {
    let body = json!({ "error": { "code": code, "message": message } });
    format!("{body}\n")
}

pub fn run(argv: &[String]) -> Outcome {
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => return clap_failure(e),
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return clap_failure(e),
    };
    let echo = echo_command(&matches);

    if let Verb::Selftest { inject_fault } = &cli.verb {
        return run_selftest(inject_fault.is_some(), cli.json, echo);
    }

    match dispatch(&cli.verb) {
        Ok((result, provenance)) => {
            let envelope = ReportEnvelope {
                schema_version: SCHEMA_VERSION.into(),
                command: echo,
                result,
                provenance,
            };
            Outcome {
                code: 0,
                stdout: render(&envelope, cli.json),
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_object("usage", &msg),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: error_object(e.code(), &e.to_string()),
        },
    }
}

fn clap_failure(e: clap::Error) -> Outcome {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
            code: 0,
            stdout: e.render().to_string(),
            stderr: String::new(),
        },
        _ => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_object("usage", e.render().to_string().trim_end()),
        },
    }
}

fn echo_command(matches: &ArgMatches) -> CommandEcho {
    let (verb, sub) = matches.subcommand().expect("a verb is required");
    let (subverb, leaf) = match sub.subcommand() {
        Some((name, leaf)) => (Some(name.to_string()), leaf),
        None => (None, sub),
    };
    // only real flags of the leaf command, not argument groups
    let root = Cli::command();
    let mut cmd = root.find_subcommand(verb).expect("parsed verb exists");
    if let Some(name) = &subverb {
        cmd = cmd.find_subcommand(name).expect("parsed subverb exists");
    }
    let flags: Vec<String> = cmd.get_arguments().map(|a| a.get_id().to_string()).collect();

    let mut args = BTreeMap::new();
    for id in flags.iter().map(String::as_str) {
        if id == "json" || id == "table" || leaf.value_source(id) != Some(ValueSource::CommandLine) {
            continue;
        }
        if let Ok(Some(raw)) = leaf.try_get_raw(id) {
            let joined = raw.map(|s| s.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
            args.insert(id.to_string(), joined);
        }
    }
    CommandEcho {
        verb: verb.to_string(),
        subverb,
        args,
    }
}

fn render(envelope: &ReportEnvelope, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(envelope).expect("envelope is serializable");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    flatten(&envelope.result, "", &mut out);
    if !envelope.provenance.is_empty() {
        out.push_str("-- provenance\n");
        for (k, v) in &envelope.provenance {
            out.push_str(&format!("{k:<24} {v}\n"));
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) => format!("{k}={{{}}}", scalar(v)),
                _ => format!("{k}={}", scalar(v)),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{:<24} {}\n", format!("{prefix}[{i}]"), scalar(item)));
            }
        }
        other => out.push_str(&format!("{prefix:<24} {}\n", scalar(other))),
    }
}

fn run_selftest(inject: bool, as_json: bool, echo: CommandEcho) -> Outcome {
    let ctx = if inject {
        selftest::Context::with_corrupted_bernoulli()
    } else {
        selftest::Context::standard()
    };
    let outcomes = selftest::run_all(&ctx);
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();

    let stdout = if as_json {
        let checks: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "elapsed_ms": format!("{:.3}", o.elapsed.as_secs_f64() * 1e3),
                })
            })
            .collect();
        let envelope = ReportEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            command: echo,
            result: json!({ "checks": checks, "passed": failed.is_empty() }),
            provenance: BTreeMap::new(),
        };
        render(&envelope, true)
    } else {
        selftest::render_table(&outcomes)
    };

    if failed.is_empty() {
        return Outcome { code: 0, stdout, stderr: String::new() };
    }
    let names = failed
        .iter()
        .map(|o| format!("[{}] {}", o.id, o.name))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome {
        code: 1,
        stdout,
        stderr: error_object("selftest-failed", &format!("failed checks: {names}")),
    }
}

fn dispatch(verb: &Verb) -> Result<Payload, Failure> {
    match verb {
        Verb::Bernoulli { n } => {
            let b = BernoulliTable::global().paper(*n)?;
            let result = json!({
                "n": n,
                "value": b.to_string(),
                "numerator": b.numer().to_string(),
                "denominator": b.denom().to_string(),
            });
            Ok((result, BTreeMap::new()))
        }
        Verb::JOrder { m } => {
            let data = dimension_data(*m)?;
            let result = json!({ "m": m, "j_m": data.j_m.to_string() });
            Ok((result, dimension_provenance(*m, None)?))
        }
        Verb::BpOrder { m } => {
            let data = dimension_data(*m)?;
            let result = json!({ "m": m, "bp8m_order": data.bp8m_order.to_string() });
            Ok((result, dimension_provenance(*m, None)?))
        }
        Verb::Wall(op) => wall(op),
        Verb::N4k(op) => n4k(op),
        Verb::Spinc(op) => spinc_cmd(op),
        Verb::Form(op) => form(op),
        Verb::Oracle(OracleOp::OrbitCount { modulus }) => {
            let formula = orbit_count_pairs_formula(modulus)?;
            let brute = match u64::try_from(modulus) {
                Ok(n) if n <= BRUTE_FORCE_LIMIT => Some(orbit_count_pairs_bruteforce(n)?.to_string()),
                _ => None,
            };
            let result = json!({
                "modulus": modulus.to_string(),
                "formula": formula.to_string(),
                "brute_force": brute,
            });
            Ok((result, BTreeMap::new()))
        }
        Verb::Selftest { .. } => unreachable!("handled before dispatch"),
    }
}

fn dimension_provenance(m: u32, bp: Option<&BigUint>) -> Result<BTreeMap<String, String>, Error> {
    let data = dimension_data(m)?;
    let mut p = BTreeMap::new();
    p.insert("m".into(), m.to_string());
    p.insert("j_m".into(), data.j_m.to_string());
    p.insert("c_m".into(), data.c_m.to_string());
    p.insert("bp".into(), data.bp(bp).to_string());
    p.insert("bp_source".into(), if bp.is_some() { "override" } else { "default" }.into());
    Ok(p)
}

fn class_provenance(w: &WallManifold, suffix: &str, p: &mut BTreeMap<String, String>) -> Result<(), Error> {
    let positive = WallManifold::new(
        w.m(),
        w.alpha().clone(),
        w.beta().clone(),
        HyperbolicSign::Positive,
        w.bp_override().cloned(),
    )?;
    let f = homotopy_family_detailed(&positive)?;
    for (k, v) in [
        ("d", f.d),
        ("A", f.a),
        ("A_prime", f.a_prime),
        ("d_prime", f.d_prime),
        ("j_bar", f.j_bar),
    ] {
        p.insert(format!("{k}{suffix}"), v.to_string());
    }
    Ok(())
}

fn build_wall(
    m: u32,
    obstruction: (&Option<BigUint>, &Option<BigUint>),
    construction: (&Option<BigUint>, &Option<BigUint>),
    orientation: HyperbolicSign,
    bp: &Option<BigUint>,
) -> Result<WallManifold, Failure> {
    let (alpha, beta) = match (obstruction, construction) {
        ((Some(alpha), Some(beta)), (None, None)) => (alpha.clone(), beta.clone()),
        ((None, None), (Some(a), Some(b))) => {
            let c = BigUint::from(dimension_data(m)?.c_m);
            (a * &c, b * &c)
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --alpha/--beta or --a/--b".into(),
            ))
        }
    };
    Ok(WallManifold::new(m, alpha, beta, orientation, bp.clone())?)
}

fn first_wall(args: &WallArgs) -> Result<WallManifold, Failure> {
    build_wall(
        args.m,
        (&args.alpha, &args.beta),
        (&args.a, &args.b),
        args.orientation,
        &args.bp,
    )
}

fn wall_json(w: &WallManifold) -> Value {
    json!({
        "alpha": w.alpha().to_string(),
        "beta": w.beta().to_string(),
        "orientation": w.orientation().to_string(),
    })
}

fn pair_json(p: &(BigInt, BigInt)) -> Value {
    json!([p.0.to_string(), p.1.to_string()])
}

fn form_json(e: &ExtSymForm) -> Value {
    json!({
        "sign": e.sign().to_string(),
        "modulus": e.target().modulus.to_string(),
        "markings": pair_json(e.markings()),
        "v_nonzero": e.v_nonzero(),
        "canonical_pair": pair_json(&normalized_canonical_pair(e)),
    })
}

fn wall(op: &WallOp) -> Result<Payload, Failure> {
    match op {
        WallOp::Invariants(args) => {
            let w = first_wall(args)?;
            let inv = wall_invariants(&w);
            let result = json!({
                "manifold": wall_json(&w),
                "d": inv.d.to_string(),
                "signature": inv.sigma,
                "salpha_sq": inv.salpha_sq.to_string(),
                "euler_characteristic": inv.euler_characteristic,
                "smooth_form": form_json(&smooth_ext_form(&w)),
                "homotopy_form": form_json(&homotopy_ext_form(&w)?),
            });
            let mut p = dimension_provenance(w.m(), w.bp_override())?;
            class_provenance(&w, "", &mut p)?;
            Ok((result, p))
        }
        WallOp::Compare(args) => {
            let w1 = first_wall(&args.first)?;
            let w2 = build_wall(
                args.first.m,
                (&args.alpha2, &args.beta2),
                (&args.a2, &args.b2),
                args.orientation2,
                &args.first.bp,
            )?;
            let relations = match args.relation {
                Some(r) => vec![r],
                None => vec![WallRelation::AlmostDiffeo, WallRelation::Homotopy, WallRelation::Stable],
            };
            let mut verdicts = serde_json::Map::new();
            for r in relations {
                let (name, holds) = match r {
                    WallRelation::AlmostDiffeo => ("almost_diffeo", almost_diffeomorphic(&w1, &w2)?),
                    WallRelation::Homotopy => ("homotopy", homotopy_equivalent(&w1, &w2)?),
                    WallRelation::Stable => ("stable", stably_almost_diffeomorphic(&w1, &w2)?),
                };
                verdicts.insert(name.into(), Value::Bool(holds));
            }
            let result = json!({
                "first": wall_json(&w1),
                "second": wall_json(&w2),
                "relations": verdicts,
            });
            let mut p = dimension_provenance(w1.m(), w1.bp_override())?;
            class_provenance(&w1, "", &mut p)?;
            class_provenance(&w2, "_2", &mut p)?;
            Ok((result, p))
        }
        WallOp::Enumerate(args) => {
            let w = first_wall(args)?;
            let report = enumerate_stable_class(&w)?;
            let members: Vec<Value> = report.members.iter().map(wall_json).collect();
            let family: Vec<Value> = report.homotopy_family.members.iter().map(wall_json).collect();
            let result = json!({
                "base": wall_json(&w),
                "stable_count": report.count_stable_mod_spheres.to_string(),
                "members": members,
                "homotopy_family": family,
                "lower": report.homotopy_lower.to_string(),
                "upper": report.homotopy_upper.to_string(),
                "member_homotopy_classes": report.member_homotopy_classes,
            });
            let mut p = dimension_provenance(w.m(), w.bp_override())?;
            class_provenance(&w, "", &mut p)?;
            Ok((result, p))
        }
        WallOp::Bounds(args) => {
            let w = first_wall(args)?;
            let report = enumerate_stable_class(&w)?;
            let result = json!({
                "lower": report.homotopy_lower.to_string(),
                "upper": report.homotopy_upper.to_string(),
                "stable_count": report.count_stable_mod_spheres.to_string(),
                "member_homotopy_classes": report.member_homotopy_classes,
            });
            let mut p = dimension_provenance(w.m(), w.bp_override())?;
            class_provenance(&w, "", &mut p)?;
            Ok((result, p))
        }
    }
}

fn n4k_json(n: &FourKManifold) -> Value {
    json!({ "a": n.a().to_string(), "b": n.b().to_string() })
}

fn n4k_family(k: u32, family: &[FourKManifold]) -> Payload {
    let product = family.first().map(|n| n.product().to_string());
    let result = json!({
        "k": k,
        "product": product,
        "count": family.len(),
        "members": family.iter().map(n4k_json).collect::<Vec<_>>(),
    });
    let mut p = BTreeMap::new();
    p.insert("k".into(), k.to_string());
    (result, p)
}

fn n4k(op: &N4kOp) -> Result<Payload, Failure> {
    match op {
        N4kOp::Enumerate { k, product } => Ok(n4k_family(*k, &n4k_enumerate_stable_class(*k, product)?)),
        N4kOp::Witness { k, n } => Ok(n4k_family(*k, &n4k_witness_family(*k, *n)?)),
        N4kOp::Compare { k, pair1, pair2, relation } => {
            let n1 = FourKManifold::new(*k, pair1.0.clone(), pair1.1.clone())?;
            let n2 = FourKManifold::new(*k, pair2.0.clone(), pair2.1.clone())?;
            let (name, holds) = match relation {
                N4kRelation::Homotopy => ("homotopy", n4k_homotopy_equivalent(&n1, &n2)?),
                N4kRelation::Stable => ("stable", n4k_stably_diffeomorphic(&n1, &n2)?),
            };
            let result = json!({
                "first": n4k_json(&n1),
                "second": n4k_json(&n2),
                "relation": name,
                "holds": holds,
            });
            let mut p = BTreeMap::new();
            p.insert("k".into(), k.to_string());
            Ok((result, p))
        }
    }
}

fn spinc_list(c: &BigInt, classes: &[SpinCClass]) -> Result<Value, Error> {
    let mut rows = Vec::with_capacity(classes.len());
    for s in classes {
        let inv = spinc::bordism_invariant(s)?;
        rows.push(json!({
            "c1": pair_json(s.c1()),
            "bordism": { "signature": inv.signature, "index8": inv.index8.to_string() },
        }));
    }
    Ok(json!({ "c1sq": c.to_string(), "count": classes.len(), "classes": rows }))
}

fn spinc_cmd(op: &SpincOp) -> Result<Payload, Failure> {
    match op {
        SpincOp::Census { c1sq } => Ok((spinc_list(c1sq, &spinc::census(c1sq)?)?, BTreeMap::new())),
        SpincOp::Orbits { c1sq } => Ok((spinc_list(c1sq, &spinc::all_orbits(c1sq)?)?, BTreeMap::new())),
        SpincOp::Compare { s1, s2, relation } => {
            let x = SpinCClass::new(s1.0.clone(), s1.1.clone())?;
            let y = SpinCClass::new(s2.0.clone(), s2.1.clone())?;
            let (name, holds) = match relation {
                SpincRelation::Equiv => ("equiv", spinc::equivalent(&x, &y)),
                SpincRelation::Stable => ("stable", spinc::stably_equivalent(&x, &y)),
            };
            let result = json!({
                "first": pair_json(x.c1()),
                "second": pair_json(y.c1()),
                "relation": name,
                "holds": holds,
            });
            Ok((result, BTreeMap::new()))
        }
    }
}

fn form(op: &FormOp) -> Result<Payload, Failure> {
    let FormOp::Equiv { sign1, f1, sign2, f2, modulus, reversal, v_nonzero } = op;
    let target = MarkingTarget::cyclic(modulus.clone());
    let e1 = ExtSymForm::new(*sign1, target.clone(), (f1.0.clone(), f1.1.clone()), *v_nonzero)?;
    let e2 = ExtSymForm::new(*sign2, target, (f2.0.clone(), f2.1.clone()), *v_nonzero)?;
    let holds = if *reversal {
        unoriented_equivalent(&e1, &e2)?
    } else {
        oriented_equivalent(&e1, &e2)?
    };
    let invariant = |e: &ExtSymForm| {
        if *reversal {
            normalized_canonical_pair(e)
        } else {
            canonical_pair(e, false)
        }
    };
    let result = json!({
        "first": form_json(&e1),
        "second": form_json(&e2),
        "relation": if *reversal { "unoriented" } else { "oriented" },
        "invariant_first": pair_json(&invariant(&e1)),
        "invariant_second": pair_json(&invariant(&e2)),
        "equivalent": holds,
    });
    Ok((result, BTreeMap::new()))
}

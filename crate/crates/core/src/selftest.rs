//! Bundled verification suite.
//!
//! Each [`Check`] reproduces one headline result exactly, usually against
//! an oracle that shares no code path with the implementation it checks
//! (trial division, divisor scans, direct formula evaluation, exhaustive
//! search). The `acceptance` test target and the `selftest` CLI verb both
//! run [`checks`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{BernoulliTable, BigRat};
use crate::forms::{
    oriented_equivalent, orbit_count_pairs_bruteforce, orbit_count_pairs_formula,
    unoriented_equivalent, ExtSymForm, HyperbolicSign, MarkingTarget,
};
use crate::jdata::{bp8_order, bp8_order_with, hopf_stabilization_check, j_order_with, prime_set_j};
use crate::manifolds::{
    almost_diffeomorphic, enumerate_stable_class, homotopy_equivalent, homotopy_family,
    homotopy_upper_bound, n4k_enumerate_stable_class, n4k_homotopy_equivalent,
    n4k_stably_diffeomorphic, stably_almost_diffeomorphic, wall_from_ab, FourKManifold,
    WallManifold,
};
use crate::spinc::{
    bordism_invariant, c1_square, census, equivalent, stably_equivalent, SpinCClass,
};

const SEED: u64 = 0x00c0_ffee_8128;

/// Inputs a check may depend on; lets the self-test run against a
/// deliberately corrupted Bernoulli table.
pub struct Context {
    pub bernoulli: BernoulliTable,
}

impl Context {
    pub fn standard() -> Self {
        Context {
            bernoulli: BernoulliTable::new(),
        }
    }

    /// `B_3` replaced by `1/43`.
    pub fn with_corrupted_bernoulli() -> Self {
        let wrong = BigRat::new(1.into(), 43.into()).expect("nonzero denominator");
        Context {
            bernoulli: BernoulliTable::with_override(3, wrong),
        }
    }
}

type CheckFn = fn(&Context) -> Result<(), String>;

pub struct Check {
    pub id: u32,
    pub name: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, name: "j_order(1..3) = 24, 240, 504", run: check_j_orders },
        Check { id: 2, name: "prime set rule matches primes of j_m, m <= 30", run: check_prime_sets },
        Check { id: 3, name: "Bernoulli denominators (von Staudt-Clausen), m <= 30", run: check_von_staudt },
        Check { id: 4, name: "bp8_order(1) = 28, bp8_order(2) = 8128", run: check_bp_orders },
        Check { id: 5, name: "orbit-count formula = brute force, N <= 1000", run: check_orbit_counts },
        Check { id: 6, name: "worked family m = 1, (56, 6)", run: check_worked_family },
        Check { id: 7, name: "homotopy sandwich on 50 random inputs", run: check_sandwich },
        Check { id: 8, name: "stable class size = divisor-scan count on 50 random inputs", run: check_stable_counts },
        Check { id: 9, name: "4k family: k = 2, product 60; k = 3, product 12 rejected", run: check_n4k },
        Check { id: 10, name: "spin^c census on S2xS2, 16 <= |C| <= 10^4", run: check_spinc },
        Check { id: 11, name: "equivalence-relation laws, 1000 triples per predicate", run: check_relation_laws },
        Check { id: 12, name: "stabilization maps (x, y) -> (x, x + 2y), m = 1, 2", run: check_hopf },
    ]
}

pub fn run_check(check: &Check, ctx: &Context) -> CheckOutcome {
    let start = Instant::now();
    let result = (check.run)(ctx);
    CheckOutcome {
        id: check.id,
        name: check.name,
        passed: result.is_ok(),
        detail: result.err().unwrap_or_default(),
        elapsed: start.elapsed(),
    }
}

pub fn run_all(ctx: &Context) -> Vec<CheckOutcome> {
    checks().iter().map(|c| run_check(c, ctx)).collect()
}

pub fn render_table(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = write!(
            out,
            "[{:>2}] {} {:<62} {:>9.3} ms",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64() * 1e3
        );
        if !o.passed {
            let _ = write!(out, "  -- {}", o.detail);
        }
        out.push('\n');
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", outcomes.len());
    out
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Independent arithmetic used as ground truth.
mod oracle {
    use super::*;

    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    /// Distinct prime divisors by trial division.
    pub fn prime_divisors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// `∏_{(p-1) | 2m} p`.
    pub fn staudt_clausen_denominator(m: u64) -> u64 {
        (2..=2 * m + 1)
            .filter(|&p| is_prime(p) && (2 * m) % (p - 1) == 0)
            .product()
    }

    /// Classical `B_n` by the Akiyama–Tanigawa transform (`B_1 = +1/2`).
    pub fn bernoulli(n: usize) -> BigRational {
        let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            a.push(BigRational::new(BigInt::one(), BigInt::from(j + 1)));
            for k in (1..=j).rev() {
                let diff = &a[k - 1] - &a[k];
                a[k - 1] = BigRational::from_integer(BigInt::from(k)) * diff;
            }
        }
        a[0].clone()
    }

    /// `2^{4m-2} (2^{4m-1} - 1) · numerator(2 |B_{4m}| / m)`.
    pub fn bp_order(m: u64) -> BigUint {
        let b = bernoulli(4 * m as usize);
        let b = if b < BigRational::zero() { -b } else { b };
        let r = BigRational::from_integer(2.into()) * b / BigRational::from_integer(m.into());
        let e = 4 * m as u32;
        let lead = BigUint::from(2u32).pow(e - 2) * (BigUint::from(2u32).pow(e - 1) - 1u32);
        lead * r.numer().magnitude()
    }

    /// Unordered `{α, β}` with `αβ = n`, `gcd(α, β) = d`, `c | α, β`, by
    /// scanning every `α ≤ √n`.
    pub fn stable_pairs(n: u128, d: u128, c: u128) -> u64 {
        let mut count = 0;
        let mut a: u128 = 1;
        while a * a <= n {
            if n % a == 0 {
                let b = n / a;
                if a.gcd(&b) == d && a % c == 0 && b % c == 0 {
                    count += 1;
                }
            }
            a += 1;
        }
        count
    }
}

fn check_j_orders(ctx: &Context) -> Result<(), String> {
    for (m, want) in [(1u32, 24u64), (2, 240), (3, 504)] {
        let start = Instant::now();
        let j = j_order_with(&ctx.bernoulli, m).map_err(err)?;
        let t = start.elapsed();
        ensure!(j == big(want), "j_order({m}) = {j}, expected {want}");
        ensure!(t < Duration::from_millis(1), "j_order({m}) took {t:?}");
    }
    Ok(())
}

fn check_prime_sets(ctx: &Context) -> Result<(), String> {
    for m in 1..=30u32 {
        let rule = prime_set_j(m).map_err(err)?;
        let j = j_order_with(&ctx.bernoulli, m).map_err(err)?;
        let j = j.to_u64().ok_or(format!("j_{m} exceeds 64 bits"))?;
        let from_j = oracle::prime_divisors(j);
        ensure!(rule == from_j, "m = {m}: rule gives {rule:?}, j_m = {j} has primes {from_j:?}");
        ensure!(rule.starts_with(&[2, 3]), "m = {m}: {{2,3}} not contained in {rule:?}");
    }
    Ok(())
}

fn check_von_staudt(ctx: &Context) -> Result<(), String> {
    for m in 1..=30u32 {
        let den = ctx.bernoulli.paper(m).map_err(err)?.denom();
        let want = oracle::staudt_clausen_denominator(m as u64);
        ensure!(den == big(want), "m = {m}: denominator {den}, expected {want}");
    }
    Ok(())
}

fn check_bp_orders(ctx: &Context) -> Result<(), String> {
    for (m, want) in [(1u32, 28u64), (2, 8128)] {
        let got = bp8_order_with(&ctx.bernoulli, m).map_err(err)?;
        let direct = oracle::bp_order(m as u64);
        ensure!(got == big(want), "bp8_order({m}) = {got}, expected {want}");
        ensure!(direct == big(want), "direct evaluation for m = {m} gives {direct}");
    }
    Ok(())
}

fn check_orbit_counts(_: &Context) -> Result<(), String> {
    let start = Instant::now();
    for n in 1..=1000u64 {
        let brute = orbit_count_pairs_bruteforce(n).map_err(err)?;
        let formula = orbit_count_pairs_formula(&big(n)).map_err(err)?;
        ensure!(formula == big(brute), "N = {n}: formula {formula}, brute force {brute}");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}, budget 5 s");
    Ok(())
}

fn unordered(members: &[WallManifold]) -> BTreeSet<(BigUint, BigUint)> {
    members
        .iter()
        .map(|w| {
            let (a, b) = (w.alpha().clone(), w.beta().clone());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

fn pairwise<T>(items: &[T], mut f: impl FnMut(&T, &T) -> Result<bool, String>) -> Result<bool, String> {
    for (i, x) in items.iter().enumerate() {
        for y in &items[i + 1..] {
            if !f(x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_worked_family(_: &Context) -> Result<(), String> {
    let base = WallManifold::new(1, big(56), big(6), HyperbolicSign::Positive, None).map_err(err)?;
    let report = enumerate_stable_class(&base).map_err(err)?;
    let want: BTreeSet<_> = [(2u64, 168u64), (6, 56), (8, 42), (14, 24)]
        .iter()
        .map(|&(a, b)| (big(a), big(b)))
        .collect();
    ensure!(report.members.len() == 4, "{} members", report.members.len());
    ensure!(unordered(&report.members) == want, "members {:?}", unordered(&report.members));
    ensure!(report.count_stable_mod_spheres == big(4), "count {}", report.count_stable_mod_spheres);
    ensure!(
        pairwise(&report.members, |x, y| stably_almost_diffeomorphic(x, y).map_err(err))?,
        "members not pairwise stably almost diffeomorphic"
    );
    ensure!(
        pairwise(&report.members, |x, y| almost_diffeomorphic(x, y).map(|b| !b).map_err(err))?,
        "two members are almost diffeomorphic"
    );

    let family = homotopy_family(&base).map_err(err)?;
    let want: BTreeSet<_> = [(big(2), big(168)), (big(8), big(42))].into_iter().collect();
    ensure!(unordered(&family) == want, "homotopy family {:?}", unordered(&family));
    ensure!(
        pairwise(&family, |x, y| homotopy_equivalent(x, y).map(|b| !b).map_err(err))?,
        "two family members are homotopy equivalent"
    );
    ensure!(report.homotopy_lower == big(2), "lower bound {}", report.homotopy_lower);
    let upper = homotopy_upper_bound(&base).map_err(err)?;
    ensure!(upper == big(43), "upper bound {upper}");
    Ok(())
}

/// Random valid `(m, a, b)` with `m ≤ 3` and `bp8_order(m) | ab`.
fn random_walls(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<WallManifold>, String> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let m = rng.gen_range(1..=3u32);
        let bp = bp8_order(m).map_err(err)?;
        let shared = big(rng.gen_range(1..=12));
        let a = &bp * big(rng.gen_range(1..=40)) * &shared;
        let b = big(rng.gen_range(1..=40)) * &shared;
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        out.push(wall_from_ab(m, &a, &b, None).map_err(err)?);
    }
    Ok(out)
}

fn check_sandwich(_: &Context) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for w in random_walls(50, &mut rng)? {
        let report = enumerate_stable_class(&w).map_err(err)?;
        let lower = homotopy_family(&w).map_err(err)?.len();
        // partition the stable class by the predicate itself
        let mut reps: Vec<&WallManifold> = Vec::new();
        for x in &report.members {
            let mut known = false;
            for r in &reps {
                if homotopy_equivalent(x, r).map_err(err)? {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(x);
            }
        }
        let upper = homotopy_upper_bound(&w).map_err(err)?;
        ensure!(
            lower <= reps.len() && big(reps.len() as u64) <= upper,
            "m = {}, ({}, {}): {lower} <= {} <= {upper} fails",
            w.m(),
            w.alpha(),
            w.beta(),
            reps.len()
        );
        ensure!(big(lower as u64) == report.homotopy_lower, "family length differs from 2^q_A,m");
    }
    Ok(())
}

fn check_stable_counts(_: &Context) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xff);
    for w in random_walls(50, &mut rng)? {
        let report = enumerate_stable_class(&w).map_err(err)?;
        let c = if w.m() <= 2 { 2u128 } else { 1 };
        let n = (w.alpha() * w.beta()).to_u128().ok_or("product exceeds 128 bits")?;
        let d = report.d.to_u128().ok_or("d exceeds 128 bits")?;
        let scan = oracle::stable_pairs(n, d, c);
        ensure!(
            report.members.len() as u64 == scan,
            "m = {}, ({}, {}): {} members, divisor scan finds {scan}",
            w.m(),
            w.alpha(),
            w.beta(),
            report.members.len()
        );
    }
    Ok(())
}

fn check_n4k(_: &Context) -> Result<(), String> {
    let family = n4k_enumerate_stable_class(2, &big(60)).map_err(err)?;
    ensure!(family.len() == 4, "{} representatives", family.len());
    ensure!(
        pairwise(&family, |x, y| n4k_stably_diffeomorphic(x, y).map_err(err))?,
        "not pairwise stably diffeomorphic"
    );
    ensure!(
        pairwise(&family, |x, y| n4k_homotopy_equivalent(x, y).map(|b| !b).map_err(err))?,
        "two representatives are homotopy equivalent"
    );
    match n4k_enumerate_stable_class(3, &big(12)) {
        Err(e) if e.code() == "factorial-divisibility" => Ok(()),
        other => Err(format!("k = 3, product 12 should be rejected, got {other:?}")),
    }
}

fn check_spinc(_: &Context) -> Result<(), String> {
    for magnitude in (16..=10_000i64).step_by(8) {
        let expected = 1usize << (oracle::prime_divisors(magnitude as u64 / 8).len() - 1);
        for c in [magnitude, -magnitude] {
            let members = census(&BigInt::from(c)).map_err(err)?;
            ensure!(members.len() == expected, "C = {c}: {} classes, expected {expected}", members.len());
            ensure!(
                pairwise(&members, |x, y| Ok(stably_equivalent(x, y)))?,
                "C = {c}: not pairwise stably equivalent"
            );
            ensure!(
                pairwise(&members, |x, y| Ok(!equivalent(x, y)))?,
                "C = {c}: two classes are equivalent"
            );
        }
    }
    let c48: Vec<_> = census(&BigInt::from(48))
        .map_err(err)?
        .iter()
        .map(|s| s.c1().clone())
        .collect();
    let want = vec![(BigInt::from(2), BigInt::from(12)), (BigInt::from(4), BigInt::from(6))];
    ensure!(c48 == want, "census(48) = {c48:?}");

    // bordism invariant: a function of c1² and injective on its values
    let mut by_square: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    let mut by_invariant: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for z1 in (-100..=100i64).step_by(2) {
        for z2 in (-100..=100i64).step_by(2) {
            let s = SpinCClass::new(z1.into(), z2.into()).map_err(err)?;
            let sq = c1_square(&s);
            let inv = bordism_invariant(&s).map_err(err)?;
            ensure!(inv.signature == 0, "signature {}", inv.signature);
            let prev = by_square.entry(sq.clone()).or_insert_with(|| inv.index8.clone());
            ensure!(*prev == inv.index8, "invariant not constant on square {sq}");
            let prev = by_invariant.entry(inv.index8.clone()).or_insert_with(|| sq.clone());
            ensure!(*prev == sq, "invariant {} shared by squares {prev} and {sq}", inv.index8);
        }
    }
    Ok(())
}

fn laws<T>(
    name: &str,
    pool: &[T],
    rng: &mut ChaCha8Rng,
    rel: impl Fn(&T, &T) -> Result<bool, String>,
) -> Result<(), String> {
    for _ in 0..1000 {
        let a = pool.choose(rng).expect("nonempty pool");
        let b = pool.choose(rng).expect("nonempty pool");
        let c = pool.choose(rng).expect("nonempty pool");
        ensure!(rel(a, a)?, "{name}: not reflexive");
        ensure!(rel(a, b)? == rel(b, a)?, "{name}: not symmetric");
        if rel(a, b)? && rel(b, c)? {
            ensure!(rel(a, c)?, "{name}: not transitive");
        }
    }
    Ok(())
}

fn check_relation_laws(_: &Context) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x11);

    let mut forms = Vec::new();
    for modulus in [0u64, 24] {
        for f1 in -4..=4i64 {
            for f2 in -4..=4i64 {
                for sign in [HyperbolicSign::Positive, HyperbolicSign::Negative] {
                    forms.push(
                        ExtSymForm::new(sign, MarkingTarget::cyclic(big(modulus)), (f1.into(), f2.into()), false)
                            .map_err(err)?,
                    );
                }
            }
        }
    }
    for modulus in [0u64, 24] {
        let pool: Vec<_> = forms
            .iter()
            .filter(|e| e.target().modulus == big(modulus))
            .cloned()
            .collect();
        laws("oriented_equivalent", &pool, &mut rng, |x, y| oriented_equivalent(x, y).map_err(err))?;
        laws("unoriented_equivalent", &pool, &mut rng, |x, y| unoriented_equivalent(x, y).map_err(err))?;
    }

    // a few stable classes in dimension 8, both orientations
    let mut walls = Vec::new();
    for (a, b) in [(28u64, 3u64), (28, 9), (56, 15), (84, 5), (28, 1)] {
        let base = wall_from_ab(1, &big(a), &big(b), None).map_err(err)?;
        for w in enumerate_stable_class(&base).map_err(err)?.members {
            walls.push(w.reversed());
            walls.push(w);
        }
    }
    laws("almost_diffeomorphic", &walls, &mut rng, |x, y| almost_diffeomorphic(x, y).map_err(err))?;
    laws("homotopy_equivalent", &walls, &mut rng, |x, y| homotopy_equivalent(x, y).map_err(err))?;
    laws("stably_almost_diffeomorphic", &walls, &mut rng, |x, y| {
        stably_almost_diffeomorphic(x, y).map_err(err)
    })?;

    let mut four_k: Vec<FourKManifold> = Vec::new();
    for product in [12u64, 60, 36, 420, 24] {
        four_k.extend(n4k_enumerate_stable_class(2, &big(product)).map_err(err)?);
    }
    laws("n4k_homotopy_equivalent", &four_k, &mut rng, |x, y| n4k_homotopy_equivalent(x, y).map_err(err))?;
    laws("n4k_stably_diffeomorphic", &four_k, &mut rng, |x, y| n4k_stably_diffeomorphic(x, y).map_err(err))?;

    let mut spinc = Vec::new();
    for z1 in (-8..=8i64).step_by(2) {
        for z2 in (-8..=8i64).step_by(2) {
            spinc.push(SpinCClass::new(z1.into(), z2.into()).map_err(err)?);
        }
    }
    laws("spinc equivalent", &spinc, &mut rng, |x, y| Ok(equivalent(x, y)))?;
    laws("spinc stably_equivalent", &spinc, &mut rng, |x, y| Ok(stably_equivalent(x, y)))?;
    Ok(())
}

fn check_hopf(_: &Context) -> Result<(), String> {
    for m in [1, 2] {
        ensure!(hopf_stabilization_check(m).map_err(err)?, "m = {m}: map check failed");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_table_is_caught() {
        let ctx = Context::with_corrupted_bernoulli();
        let failed: Vec<u32> = checks()
            .iter()
            .filter(|c| matches!(c.id, 1..=4))
            .map(|c| run_check(c, &ctx))
            .filter(|o| !o.passed)
            .map(|o| o.id)
            .collect();
        assert!(failed.contains(&1));
        assert!(failed.contains(&3));
    }

    #[test]
    fn oracle_sanity() {
        assert_eq!(oracle::prime_divisors(504), vec![2, 3, 7]);
        assert_eq!(oracle::staudt_clausen_denominator(1), 6);
        assert_eq!(oracle::bp_order(1), big(28));
        assert_eq!(oracle::stable_pairs(672 / 2, 2, 2), 4);
    }
}

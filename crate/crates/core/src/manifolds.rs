//! The two manifold families and their classification predicates.
//!
//! [`WallManifold`] models a closed `(4m-1)`-connected `8m`-manifold with
//! hyperbolic intersection form. It is keyed by the values `(α, β)` of its
//! obstruction class on a hyperbolic basis; the manifold built from
//! construction parameters `(a, b)` has `(α, β) = (a·c_m, b·c_m)`.
//! Orientation reversal negates the form but leaves `(α, β)` unchanged.
//!
//! [`FourKManifold`] models the `4k`-dimensional family indexed by a coprime
//! unordered pair `{a, b}` with `(2k)! | 2ab`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    factorial_divides, factorize, is_prime, splittings_of, CoprimeSplitting, Factorization,
};
use crate::forms::{
    normalized_canonical_pair, unoriented_equivalent, ExtSymForm, HyperbolicSign, MarkingTarget,
};
use crate::jdata::dimension_data;

pub type Orientation = HyperbolicSign;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallManifold {
    m: u32,
    alpha: BigUint,
    beta: BigUint,
    orientation: Orientation,
    bp_override: Option<BigUint>,
}

impl WallManifold {
    /// Validates `c_m | α, β` and `𝔟𝔭_m | (α/c_m)(β/c_m)`.
    pub fn new(
        m: u32,
        alpha: BigUint,
        beta: BigUint,
        orientation: Orientation,
        bp_override: Option<BigUint>,
    ) -> Result<Self> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::invalid("obstruction values must be positive"));
        }
        if matches!(&bp_override, Some(bp) if bp.is_zero()) {
            return Err(Error::invalid("bp override must be positive"));
        }
        let data = dimension_data(m)?;
        let c = BigUint::from(data.c_m);
        if !(&alpha % &c).is_zero() || !(&beta % &c).is_zero() {
            return Err(Error::ParityViolation(format!(
                "c_{m} = {c} must divide both obstruction values ({alpha}, {beta})"
            )));
        }
        let product = (&alpha / &c) * (&beta / &c);
        let bp = data.bp(bp_override.as_ref());
        if !(&product % &bp).is_zero() {
            return Err(Error::BoundaryNotStandardSphere { bp, product });
        }
        Ok(WallManifold {
            m,
            alpha,
            beta,
            orientation,
            bp_override,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> &BigUint {
        &self.alpha
    }

    pub fn beta(&self) -> &BigUint {
        &self.beta
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn bp_override(&self) -> Option<&BigUint> {
        self.bp_override.as_ref()
    }

    pub fn reversed(&self) -> Self {
        WallManifold {
            orientation: self.orientation.flipped(),
            ..self.clone()
        }
    }

    /// Divisibility of the obstruction class, `gcd(α, β)`.
    pub fn divisibility(&self) -> BigUint {
        self.alpha.gcd(&self.beta)
    }

    /// A sibling with the same dimension and bp policy.
    fn sibling(&self, alpha: BigUint, beta: BigUint) -> Result<Self> {
        WallManifold::new(
            self.m,
            alpha,
            beta,
            HyperbolicSign::Positive,
            self.bp_override.clone(),
        )
    }
}

/// The manifold built from construction parameters `(a, b)`:
/// `(α, β) = (a·c_m, b·c_m)`, positively oriented.
pub fn wall_from_ab(
    m: u32,
    a: &BigUint,
    b: &BigUint,
    bp_override: Option<BigUint>,
) -> Result<WallManifold> {
    let c = BigUint::from(dimension_data(m)?.c_m);
    WallManifold::new(m, a * &c, b * &c, HyperbolicSign::Positive, bp_override)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallInvariants {
    pub d: BigUint,
    pub sigma: i64,
    pub salpha_sq: BigInt,
    pub euler_characteristic: i64,
}

/// Stable invariants: divisibility `d`, signature, and `⟨(Sα)², [M]⟩ = ±2αβ`.
pub fn wall_invariants(m: &WallManifold) -> WallInvariants {
    let square = BigInt::from(2u32 * &m.alpha * &m.beta) * m.orientation.value();
    WallInvariants {
        d: m.divisibility(),
        sigma: 0,
        salpha_sq: square,
        euler_characteristic: 4,
    }
}

pub fn smooth_ext_form(m: &WallManifold) -> ExtSymForm {
    ExtSymForm::new(
        m.orientation,
        MarkingTarget::integers(),
        (m.alpha.clone().into(), m.beta.clone().into()),
        m.m <= 2,
    )
    .expect("validated manifolds have c_m-divisible markings")
}

/// The smooth form composed with `J`: markings reduced mod `j_m`.
pub fn homotopy_ext_form(m: &WallManifold) -> Result<ExtSymForm> {
    let j = dimension_data(m.m)?.j_m.clone();
    ExtSymForm::new(
        m.orientation,
        MarkingTarget::cyclic(j),
        (m.alpha.clone().into(), m.beta.clone().into()),
        m.m <= 2,
    )
}

fn same_dimension(m1: &WallManifold, m2: &WallManifold) -> Result<()> {
    if m1.m != m2.m {
        return Err(Error::invalid(format!(
            "dimension mismatch: m = {} vs m = {}",
            m1.m, m2.m
        )));
    }
    Ok(())
}

pub fn almost_diffeomorphic(m1: &WallManifold, m2: &WallManifold) -> Result<bool> {
    same_dimension(m1, m2)?;
    unoriented_equivalent(&smooth_ext_form(m1), &smooth_ext_form(m2))
}

pub fn homotopy_equivalent(m1: &WallManifold, m2: &WallManifold) -> Result<bool> {
    same_dimension(m1, m2)?;
    unoriented_equivalent(&homotopy_ext_form(m1)?, &homotopy_ext_form(m2)?)
}

/// Equal divisibility, equal signature, and `⟨(Sα)², [M]⟩` equal up to the
/// choice of orientation. Euler characteristics are both 4.
pub fn stably_almost_diffeomorphic(m1: &WallManifold, m2: &WallManifold) -> Result<bool> {
    same_dimension(m1, m2)?;
    let (i1, i2) = (wall_invariants(m1), wall_invariants(m2));
    Ok(i1.d == i2.d
        && i1.sigma == i2.sigma
        && i1.salpha_sq.magnitude() == i2.salpha_sq.magnitude())
}

/// Parameters of the lower-bound family: the part `A'` of `A` supported on
/// primes dividing `j̄ = j_m / gcd(j_m, d)`, and `d' = d · A / A'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyFamily {
    pub d: BigUint,
    pub a: BigUint,
    pub j_bar: BigUint,
    pub a_prime: BigUint,
    pub d_prime: BigUint,
    pub q_a_m: usize,
    pub members: Vec<WallManifold>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableClassReport {
    pub base: WallManifold,
    pub d: BigUint,
    pub a: BigUint,
    pub q_a: usize,
    pub members: Vec<WallManifold>,
    pub count_stable_mod_spheres: BigUint,
    pub homotopy_lower: BigUint,
    pub homotopy_upper: BigUint,
    /// Homotopy classes met by `members`; lies between the two bounds.
    pub member_homotopy_classes: usize,
    pub homotopy_family: HomotopyFamily,
}

fn require_positive(m: &WallManifold) -> Result<()> {
    if m.orientation != HyperbolicSign::Positive {
        return Err(Error::invalid(
            "enumeration starts from a positively oriented manifold",
        ));
    }
    Ok(())
}

/// `(d, A, factorization of A)` with `A = αβ / d²`.
fn class_parameters(m: &WallManifold) -> Result<(BigUint, BigUint, Factorization)> {
    let d = m.divisibility();
    let a = (&m.alpha / &d) * (&m.beta / &d);
    let f = factorize(&a)?;
    Ok((d, a, f))
}

fn sort_members(members: &mut [WallManifold]) {
    members.sort_by(|x, y| {
        let key = |w: &WallManifold| {
            let (lo, hi) = if w.alpha <= w.beta {
                (w.alpha.clone(), w.beta.clone())
            } else {
                (w.beta.clone(), w.alpha.clone())
            };
            (lo, hi, w.alpha.clone())
        };
        key(x).cmp(&key(y))
    });
}

fn power_of_two(e: usize) -> BigUint {
    BigUint::one() << e
}

/// One manifold `(d·y, d·z)` per coprime splitting `{y, z}` of `A`, with the
/// homotopy bounds.
pub fn enumerate_stable_class(m: &WallManifold) -> Result<StableClassReport> {
    require_positive(m)?;
    let (d, a, f) = class_parameters(m)?;
    let mut members = splittings_of(&f)
        .into_iter()
        .map(|s| m.sibling(&d * &s.left, &d * &s.right))
        .collect::<Result<Vec<_>>>()?;
    sort_members(&mut members);

    let q_a = f.distinct_primes().saturating_sub(1);
    let family = homotopy_family_detailed(m)?;
    let classes = members
        .iter()
        .map(|w| homotopy_ext_form(w).map(|e| normalized_canonical_pair(&e)))
        .collect::<Result<BTreeSet<_>>>()?
        .len();

    Ok(StableClassReport {
        base: m.clone(),
        count_stable_mod_spheres: power_of_two(q_a),
        homotopy_lower: power_of_two(family.q_a_m),
        homotopy_upper: homotopy_upper_bound(m)?,
        member_homotopy_classes: classes,
        d,
        a,
        q_a,
        members,
        homotopy_family: family,
    })
}

pub fn homotopy_family(m: &WallManifold) -> Result<Vec<WallManifold>> {
    Ok(homotopy_family_detailed(m)?.members)
}

/// `2^{q_{A,m}}` pairwise homotopy-inequivalent members of the stable class:
/// `(d·v, d'·w)` over the coprime splittings `{v, w}` of `A'`.
///
/// Within a splitting, `w` is the part carrying the largest prime of `A'`.
pub fn homotopy_family_detailed(m: &WallManifold) -> Result<HomotopyFamily> {
    require_positive(m)?;
    let (d, a, f) = class_parameters(m)?;
    let j = dimension_data(m.m)?.j_m.clone();
    let j_bar = &j / j.gcd(&d);

    let supported: Vec<_> = f
        .factors()
        .iter()
        .filter(|p| (&j_bar % &p.prime).is_zero())
        .collect();
    let a_prime: BigUint = supported.iter().map(|p| p.prime_power()).product();
    let d_prime = &d * (&a / &a_prime);
    let largest = supported.last().map(|p| p.prime.clone());

    let a_prime_factors = factorize(&a_prime)?;
    let mut members = Vec::new();
    for CoprimeSplitting { left, right } in splittings_of(&a_prime_factors) {
        let (v, w) = match &largest {
            Some(p) if (&left % p).is_zero() => (right, left),
            _ => (left, right),
        };
        members.push(m.sibling(&d * v, &d_prime * w)?);
    }
    sort_members(&mut members);

    Ok(HomotopyFamily {
        q_a_m: supported.len().saturating_sub(1),
        d,
        a,
        j_bar,
        a_prime,
        d_prime,
        members,
    })
}

/// `⌊(j̄² + 2j̄ + 4) / 4⌋` with `j̄ = j_m / gcd(j_m, d)`.
pub fn homotopy_upper_bound(m: &WallManifold) -> Result<BigUint> {
    let j = dimension_data(m.m)?.j_m.clone();
    let j_bar = &j / j.gcd(&m.divisibility());
    crate::forms::orbit_count_pairs_formula(&j_bar)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourKManifold {
    k: u32,
    a: BigUint,
    b: BigUint,
}

impl FourKManifold {
    pub fn new(k: u32, a: BigUint, b: BigUint) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("k must be at least 2, got {k}")));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::invalid("a and b must be positive"));
        }
        if !a.gcd(&b).is_one() {
            return Err(Error::invalid(format!("{a} and {b} are not coprime")));
        }
        let twice = 2u32 * &a * &b;
        if !factorial_divides(k as u64, &twice)? {
            return Err(Error::FactorialDivisibility {
                two_k: 2 * k as u64,
                value: twice,
            });
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Ok(FourKManifold { k, a, b })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn product(&self) -> BigUint {
        &self.a * &self.b
    }
}

fn same_k(n1: &FourKManifold, n2: &FourKManifold) -> Result<()> {
    if n1.k != n2.k {
        return Err(Error::invalid(format!("k mismatch: {} vs {}", n1.k, n2.k)));
    }
    Ok(())
}

/// The cohomology ring determines `{a, b}`, and any homotopy equivalence
/// preserves orientation, so the unordered pair is a complete invariant.
pub fn n4k_homotopy_equivalent(n1: &FourKManifold, n2: &FourKManifold) -> Result<bool> {
    same_k(n1, n2)?;
    Ok(n1.a == n2.a && n1.b == n2.b)
}

pub fn n4k_stably_diffeomorphic(n1: &FourKManifold, n2: &FourKManifold) -> Result<bool> {
    same_k(n1, n2)?;
    Ok(n1.product() == n2.product())
}

/// Every `{a, b}` with `ab = product` and `gcd(a, b) = 1`.
pub fn n4k_enumerate_stable_class(k: u32, product: &BigUint) -> Result<Vec<FourKManifold>> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    if product.is_zero() {
        return Err(Error::invalid("product must be positive"));
    }
    let twice = product * 2u32;
    if !factorial_divides(k as u64, &twice)? {
        return Err(Error::FactorialDivisibility {
            two_k: 2 * k as u64,
            value: twice,
        });
    }
    splittings_of(&factorize(product)?)
        .into_iter()
        .map(|s| FourKManifold::new(k, s.left, s.right))
        .collect()
}

/// At least `n` pairwise stably diffeomorphic, pairwise homotopy-inequivalent
/// manifolds: the class of `P = (2k)!/2` times the smallest primes not
/// already dividing it, taking as many as needed for `2^{ω(P)-1} ≥ n`.
pub fn n4k_witness_family(k: u32, n: u64) -> Result<Vec<FourKManifold>> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let two_k = 2 * k as u64;
    let mut product: BigUint = (1..=two_k).map(BigUint::from).product::<BigUint>() / 2u32;
    let mut omega = factorize(&product)?.distinct_primes();
    let mut candidate = two_k;
    while omega == 0 || (1u128 << (omega - 1).min(127)) < n as u128 {
        candidate += 1;
        let c = BigUint::from(candidate);
        if is_prime(&c, 1).is_some() && !(&product % &c).is_zero() {
            product *= c;
            omega += 1;
        }
    }
    n4k_enumerate_stable_class(k, &product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::canonical_pair;
    use crate::jdata::bp8_order;
    use num_traits::ToPrimitive;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn wall(m: u32, alpha: u64, beta: u64) -> WallManifold {
        WallManifold::new(m, big(alpha), big(beta), HyperbolicSign::Positive, None).unwrap()
    }

    fn pairs(v: &[WallManifold]) -> Vec<(u64, u64)> {
        v.iter()
            .map(|w| (w.alpha().to_u64().unwrap(), w.beta().to_u64().unwrap()))
            .collect()
    }

    fn unordered(v: &[WallManifold]) -> BTreeSet<(u64, u64)> {
        pairs(v)
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    #[test]
    fn construction_from_ab() {
        let w = wall_from_ab(1, &big(28), &big(3), None).unwrap();
        assert_eq!(pairs(&[w]), vec![(56, 6)]);
        let bp3 = bp8_order(3).unwrap();
        let w = wall_from_ab(3, &big(1), &bp3, None).unwrap();
        assert_eq!(w.alpha(), &big(1));
        assert_eq!(w.beta(), &bp3);
        let err = wall_from_ab(1, &big(1), &big(3), None).unwrap_err();
        assert_eq!(err.code(), "boundary-not-standard-sphere");
    }

    #[test]
    fn override_replaces_default_bp() {
        assert!(wall_from_ab(1, &big(1), &big(3), Some(big(3))).is_ok());
        assert!(wall_from_ab(1, &big(1), &big(3), Some(big(2))).is_err());
        assert!(wall_from_ab(1, &big(1), &big(3), Some(big(0))).is_err());
    }

    #[test]
    fn odd_obstruction_rejected_in_exceptional_dimensions() {
        let err = WallManifold::new(1, big(7), big(56), HyperbolicSign::Positive, None);
        assert_eq!(err.unwrap_err().code(), "parity-violation");
    }

    #[test]
    fn invariants() {
        let i = wall_invariants(&wall(1, 56, 6));
        assert_eq!((i.d, i.sigma, i.salpha_sq), (big(2), 0, BigInt::from(672)));
        let i = wall_invariants(&wall(1, 56, 6).reversed());
        assert_eq!(i.salpha_sq, BigInt::from(-672));
        let n = bp8_order(3).unwrap();
        let i = wall_invariants(&WallManifold::new(3, big(1), n.clone(), HyperbolicSign::Positive, None).unwrap());
        assert_eq!((i.d, i.salpha_sq), (big(1), BigInt::from(2u32 * n)));
    }

    #[test]
    fn extended_forms() {
        let e = smooth_ext_form(&wall(1, 56, 6));
        assert_eq!(e.markings(), &(56.into(), 6.into()));
        assert!(e.v_nonzero());
        assert_eq!(e.sign(), HyperbolicSign::Positive);
        let e = smooth_ext_form(&wall(1, 56, 6).reversed());
        assert_eq!(e.sign(), HyperbolicSign::Negative);
        assert_eq!(e.markings(), &(56.into(), 6.into()));

        let w5 = WallManifold::new(5, big(7), big(11), HyperbolicSign::Positive, Some(big(1))).unwrap();
        let e = smooth_ext_form(&w5);
        assert!(!e.v_nonzero());

        let h = homotopy_ext_form(&wall(1, 56, 6)).unwrap();
        assert_eq!(h.markings(), &(8.into(), 6.into()));
        let h = homotopy_ext_form(&wall(1, 2, 168)).unwrap();
        assert_eq!(h.markings(), &(2.into(), 0.into()));
        let h = homotopy_ext_form(&wall(1, 24, 48 * 7)).unwrap();
        assert_eq!(h.markings(), &(0.into(), 0.into()));
    }

    #[test]
    fn predicates_examples() {
        let (x, y) = (wall(1, 2, 168), wall(1, 168, 2));
        assert!(almost_diffeomorphic(&x, &y).unwrap());
        assert!(!almost_diffeomorphic(&wall(1, 2, 168), &wall(1, 8, 42)).unwrap());
        assert!(!almost_diffeomorphic(&wall(1, 56, 6), &wall(1, 56, 6).reversed()).unwrap());

        assert!(!homotopy_equivalent(&wall(1, 2, 168), &wall(1, 8, 42)).unwrap());
        assert!(homotopy_equivalent(&wall(1, 2, 168), &wall(1, 2, 24 * 14)).unwrap());

        assert!(stably_almost_diffeomorphic(&wall(1, 2, 168), &wall(1, 8, 42)).unwrap());
        assert!(stably_almost_diffeomorphic(&wall(1, 2, 168), &wall(1, 6, 56)).unwrap());
        assert!(!stably_almost_diffeomorphic(&wall(1, 2, 168), &wall(1, 4, 84)).unwrap());

        let other = WallManifold::new(3, big(1), bp8_order(3).unwrap(), HyperbolicSign::Positive, None).unwrap();
        assert_eq!(almost_diffeomorphic(&x, &other).unwrap_err().code(), "invalid-argument");
    }

    #[test]
    fn worked_stable_class() {
        let report = enumerate_stable_class(&wall(1, 56, 6)).unwrap();
        assert_eq!(report.d, big(2));
        assert_eq!(report.a, big(84));
        assert_eq!(pairs(&report.members), vec![(2, 168), (6, 56), (8, 42), (14, 24)]);
        assert_eq!(report.count_stable_mod_spheres, big(4));
        assert_eq!(report.homotopy_lower, big(2));
        assert_eq!(report.homotopy_upper, big(43));
        assert_eq!(report.member_homotopy_classes, 4);

        let fam = &report.homotopy_family;
        assert_eq!(fam.j_bar, big(12));
        assert_eq!(fam.a_prime, big(12));
        assert_eq!(fam.d_prime, big(14));
        assert_eq!(&fam.d_prime * &fam.a_prime, &fam.d * &fam.a);
        assert_eq!(unordered(&fam.members), BTreeSet::from([(2, 168), (8, 42)]));
    }

    #[test]
    fn family_invariant_under_swap() {
        let a = homotopy_family(&wall(1, 56, 6)).unwrap();
        let b = homotopy_family(&wall(1, 168, 2)).unwrap();
        assert_eq!(unordered(&a), unordered(&b));
    }

    #[test]
    fn trivial_a_gives_singletons() {
        let w = WallManifold::new(3, big(5), big(5), HyperbolicSign::Positive, Some(big(1))).unwrap();
        let r = enumerate_stable_class(&w).unwrap();
        assert_eq!(r.a, big(1));
        assert_eq!(r.members.len(), 1);
        assert_eq!(r.count_stable_mod_spheres, big(1));
        assert_eq!(r.homotopy_family.members.len(), 1);
    }

    #[test]
    fn bp_order_three_class_counts() {
        let n = bp8_order(3).unwrap();
        let w = WallManifold::new(3, big(1), n.clone(), HyperbolicSign::Positive, None).unwrap();
        let r = enumerate_stable_class(&w).unwrap();
        let omega = factorize(&n).unwrap().distinct_primes();
        assert_eq!(r.members.len(), 1 << (omega - 1));
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(homotopy_upper_bound(&wall(1, 2, 168)).unwrap(), big(43));
        assert_eq!(homotopy_upper_bound(&wall(1, 24, 24 * 7)).unwrap(), big(1));
        let w = WallManifold::new(2, big(2), big(2), HyperbolicSign::Positive, Some(big(1))).unwrap();
        assert_eq!(homotopy_upper_bound(&w).unwrap(), big(3661));
        assert_eq!(crate::forms::orbit_count_pairs_bruteforce(120).unwrap(), 3661);
    }

    #[test]
    fn family_members_distinct_even_up_to_orientation() {
        for (m, alpha, beta) in [(1, 56, 6), (2, 2 * 8128 * 15, 2 * 7), (3, 1_448_424_448 * 5, 42)] {
            let fam = homotopy_family(&wall(m, alpha, beta)).unwrap();
            let keys: BTreeSet<_> = fam
                .iter()
                .map(|w| canonical_pair(&homotopy_ext_form(w).unwrap(), true))
                .collect();
            assert_eq!(keys.len(), fam.len());
        }
    }

    #[test]
    fn n4k_examples() {
        let n = |a, b| FourKManifold::new(2, big(a), big(b)).unwrap();
        assert!(n4k_homotopy_equivalent(&n(1, 12), &n(12, 1)).unwrap());
        assert!(!n4k_homotopy_equivalent(&n(1, 12), &n(3, 4)).unwrap());
        assert!(n4k_stably_diffeomorphic(&n(1, 12), &n(3, 4)).unwrap());
        assert!(!n4k_stably_diffeomorphic(&n(1, 12), &n(1, 24)).unwrap());
        let n3 = FourKManifold::new(3, big(1), big(360)).unwrap();
        assert!(n4k_stably_diffeomorphic(&n(1, 12), &n3).is_err());
        assert_eq!(FourKManifold::new(2, big(2), big(6)).unwrap_err().code(), "invalid-argument");
        assert_eq!(FourKManifold::new(2, big(1), big(5)).unwrap_err().code(), "factorial-divisibility");
    }

    fn four_k_pairs(v: &[FourKManifold]) -> Vec<(u64, u64)> {
        v.iter()
            .map(|n| (n.a().to_u64().unwrap(), n.b().to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn n4k_enumeration() {
        let v = n4k_enumerate_stable_class(2, &big(60)).unwrap();
        assert_eq!(four_k_pairs(&v), vec![(1, 60), (3, 20), (4, 15), (5, 12)]);
        let v = n4k_enumerate_stable_class(2, &big(12)).unwrap();
        assert_eq!(four_k_pairs(&v), vec![(1, 12), (3, 4)]);
        let err = n4k_enumerate_stable_class(3, &big(12)).unwrap_err();
        assert_eq!(err.code(), "factorial-divisibility");
    }

    #[test]
    fn n4k_witnesses() {
        assert_eq!(four_k_pairs(&n4k_witness_family(2, 2).unwrap()), vec![(1, 12), (3, 4)]);
        assert_eq!(n4k_witness_family(2, 4).unwrap()[0].product(), big(60));
        assert_eq!(n4k_witness_family(2, 4).unwrap().len(), 4);
        assert_eq!(n4k_witness_family(2, 1).unwrap()[0].product(), big(12));
        let w = n4k_witness_family(3, 10).unwrap();
        assert!(w.len() >= 10);
        for x in &w {
            for y in &w {
                assert!(n4k_stably_diffeomorphic(x, y).unwrap());
                assert_eq!(n4k_homotopy_equivalent(x, y).unwrap(), x == y);
            }
        }
    }
}

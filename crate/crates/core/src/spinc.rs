//! Spin^c structures on S²×S², recorded by their first Chern class
//! `c₁ = z1·x + z2·y` in the basis of `H²(S²×S²)` with `x² = y² = 0`,
//! `xy = 1`.
//!
//! `c₁` is characteristic, which for this even form means both coordinates
//! are even. `H²` acts freely and transitively by `c₁ ↦ c₁ + 2x`.
//!
//! [`equivalent`] is the isometry-orbit test on `c₁`. Any equivalence of
//! structures induces such an isometry, so a `false` answer proves two
//! structures inequivalent; a `true` answer only says `c₁` cannot tell them
//! apart. Both generators of the isometry group (factor swap and
//! conjugation in both factors) are realized by orientation-preserving
//! self-diffeomorphisms of S²×S².

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factorize, splittings_of, Factorization};
use crate::forms::{isometry_group_hyperbolic, HYPERBOLIC};

/// Signature of S²×S².
const SIGNATURE: i64 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinCClass {
    c1: (BigInt, BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BordismClass {
    pub signature: i64,
    pub index8: BigInt,
}

fn pairing(u: &(BigInt, BigInt), v: &(BigInt, BigInt)) -> BigInt {
    let h = HYPERBOLIC;
    &u.0 * h[0][0] * &v.0 + &u.0 * h[0][1] * &v.1 + &u.1 * h[1][0] * &v.0 + &u.1 * h[1][1] * &v.1
}

/// `λ(x, x) ≡ λ(x, v) mod 2` for every `x`; checked on the basis, which
/// suffices because both sides are additive mod 2.
pub fn is_characteristic(v: &(BigInt, BigInt)) -> bool {
    let basis = [
        (BigInt::from(1), BigInt::zero()),
        (BigInt::zero(), BigInt::from(1)),
    ];
    basis
        .iter()
        .all(|x| (pairing(x, x) - pairing(x, v)).is_even())
}

impl SpinCClass {
    pub fn new(z1: BigInt, z2: BigInt) -> Result<Self> {
        let c1 = (z1, z2);
        if !is_characteristic(&c1) {
            return Err(Error::ParityViolation(format!(
                "({}, {}) is not characteristic; both coordinates must be even",
                c1.0, c1.1
            )));
        }
        Ok(SpinCClass { c1 })
    }

    pub fn c1(&self) -> &(BigInt, BigInt) {
        &self.c1
    }

    fn orbit(&self) -> Vec<(BigInt, BigInt)> {
        let (a, b) = &self.c1;
        isometry_group_hyperbolic()
            .iter()
            .map(|h| (a * h[0][0] + b * h[0][1], a * h[1][0] + b * h[1][1]))
            .collect()
    }
}

/// `c₁²` evaluated on the fundamental class: `2·z1·z2`.
pub fn c1_square(s: &SpinCClass) -> BigInt {
    pairing(&s.c1, &s.c1)
}

/// `c₁(x · s) = c₁(s) + 2x`.
pub fn chern_action(x: &(BigInt, BigInt), s: &SpinCClass) -> SpinCClass {
    SpinCClass {
        c1: (&s.c1.0 + 2 * &x.0, &s.c1.1 + 2 * &x.1),
    }
}

pub fn equivalent(s1: &SpinCClass, s2: &SpinCClass) -> bool {
    s1.orbit().contains(&s2.c1)
}

pub fn stably_equivalent(s1: &SpinCClass, s2: &SpinCClass) -> bool {
    c1_square(s1) == c1_square(s2)
}

/// `(σ, (c₁² - σ) / 8)`.
pub fn bordism_invariant(s: &SpinCClass) -> Result<BordismClass> {
    let excess = c1_square(s) - SIGNATURE;
    let (index8, rem) = excess.div_rem(&BigInt::from(8));
    if !rem.is_zero() {
        return Err(Error::NotCharacteristicSquare(excess.to_string()));
    }
    Ok(BordismClass {
        signature: SIGNATURE,
        index8,
    })
}

/// `Q = C / 8`, checking `8 | C` and `C ≠ 0`.
fn quarter_square(c: &BigInt) -> Result<BigInt> {
    let (q, rem) = c.div_rem(&BigInt::from(8));
    if !rem.is_zero() {
        return Err(Error::NotCharacteristicSquare(c.to_string()));
    }
    if q.is_zero() {
        return Err(Error::invalid("c1 square must be nonzero"));
    }
    Ok(q)
}

/// The representative `(2u, ±2v)`, negative second entry when `Q < 0`.
fn representative(u: &BigUint, v: &BigUint, negative: bool) -> SpinCClass {
    let z2 = BigInt::from(2u32 * v);
    SpinCClass {
        c1: (
            BigInt::from(2u32 * u),
            if negative { -z2 } else { z2 },
        ),
    }
}

fn divisors(f: &Factorization) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(1u32)];
    for p in f.factors() {
        let mut next = Vec::with_capacity(out.len() * (p.exponent as usize + 1));
        for d in &out {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..p.exponent {
                power *= &p.prime;
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Pairwise stably equivalent, pairwise inequivalent structures with
/// `c₁² = C`: one per coprime splitting `{q1, q2}` of `|C|/8`, so
/// `2^{P(C)-1}` of them where `P(C)` counts the primes of `C/8`.
pub fn census(c: &BigInt) -> Result<Vec<SpinCClass>> {
    let q = quarter_square(c).map_err(|e| match e {
        Error::InvalidArgument(_) => hypothesis(c),
        other => other,
    })?;
    if c.abs() < BigInt::from(16) {
        return Err(hypothesis(c));
    }
    let negative = q.is_negative();
    Ok(splittings_of(&factorize(q.magnitude())?)
        .iter()
        .map(|s| representative(&s.left, &s.right, negative))
        .collect())
}

fn hypothesis(c: &BigInt) -> Error {
    Error::HypothesisViolation(format!(
        "the census needs |c1²| ≥ 16, got {c}"
    ))
}

/// One representative per isometry orbit of characteristic vectors with
/// square `C`: every unordered factorization `{u, v}` of `|C|/8`.
pub fn all_orbits(c: &BigInt) -> Result<Vec<SpinCClass>> {
    let q = quarter_square(c)?;
    let negative = q.is_negative();
    let n = q.magnitude().clone();
    Ok(divisors(&factorize(&n)?)
        .into_iter()
        .filter(|u| u * u <= n)
        .map(|u| {
            let v = &n / &u;
            representative(&u, &v, negative)
        })
        .collect())
}

//! Dimension-indexed constants for the `8m`-dimensional family.
//!
//! * `j_m`: order of the image of the stable J-homomorphism in degree
//!   `4m-1`, the denominator of `B_m / 4m`.
//! * its prime set `{p prime : (p-1) | 2m}` and `q_m = |primes| - 1`.
//! * `|bP_{8m}| = 2^{4m-2} (2^{4m-1} - 1) · numerator(2 B_{2m} / m)`.
//! * the correction factor `c_m`, 2 in dimensions 8 and 16 and 1 above.

use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactmath::{is_prime, BernoulliTable, BigRat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionData {
    pub m: u32,
    pub j_m: BigUint,
    pub bernoulli_m: BigRat,
    /// `{p prime : (p-1) | 2m}`, ascending.
    pub prime_set: Vec<u64>,
    pub q_m: usize,
    pub c_m: u32,
    pub bp8m_order: BigUint,
    /// Divisibility required of `ab` when no override is given. Every
    /// order of the boundary sphere divides `|bP_{8m}|`, so requiring the
    /// full order is sufficient.
    pub bp_default: BigUint,
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("dimension index m must be at least 1"));
    }
    Ok(())
}

impl DimensionData {
    /// Computes every constant for `m` from `table`, without memoization.
    pub fn compute(table: &BernoulliTable, m: u32) -> Result<Self> {
        check_m(m)?;
        let bernoulli_m = table.paper(m)?;
        let j_m = j_order_with(table, m)?;
        let prime_set = prime_set_j(m)?;
        let bp8m_order = bp8_order_with(table, m)?;
        Ok(DimensionData {
            m,
            j_m,
            bernoulli_m,
            q_m: prime_set.len() - 1,
            prime_set,
            c_m: c_factor(m)?,
            bp_default: bp8m_order.clone(),
            bp8m_order,
        })
    }

    /// `𝔟𝔭_m` as used for validation: the override when given, else the default.
    pub fn bp(&self, bp_override: Option<&BigUint>) -> BigUint {
        bp_override.cloned().unwrap_or_else(|| self.bp_default.clone())
    }
}

/// Memoized [`DimensionData`] from the global Bernoulli table.
pub fn dimension_data(m: u32) -> Result<Arc<DimensionData>> {
    static CACHE: OnceLock<RwLock<BTreeMap<u32, Arc<DimensionData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().expect("dimension cache poisoned").get(&m) {
        return Ok(Arc::clone(d));
    }
    let data = Arc::new(DimensionData::compute(BernoulliTable::global(), m)?);
    let mut w = cache.write().expect("dimension cache poisoned");
    Ok(Arc::clone(w.entry(m).or_insert(data)))
}

pub fn j_order(m: u32) -> Result<BigUint> {
    Ok(dimension_data(m)?.j_m.clone())
}

/// Denominator of `B_m / 4m` in lowest terms.
pub fn j_order_with(table: &BernoulliTable, m: u32) -> Result<BigUint> {
    check_m(m)?;
    let b = table.paper(m)?;
    let q = b.checked_div(&BigRat::from_integer(4 * m))?;
    Ok(q.denom())
}

/// Primes `p` with `(p-1) | 2m`. Computed from the divisibility rule alone.
pub fn prime_set_j(m: u32) -> Result<Vec<u64>> {
    check_m(m)?;
    let two_m = 2 * m as u64;
    let set = (1..=two_m)
        .filter(|d| two_m % d == 0)
        .map(|d| d + 1)
        .filter(|p| is_prime(&BigUint::from(*p), 1).is_some())
        .collect();
    Ok(set)
}

pub fn bp8_order(m: u32) -> Result<BigUint> {
    Ok(dimension_data(m)?.bp8m_order.clone())
}

/// `2^{4m-2} (2^{4m-1} - 1) · numerator(2 B_{2m} / m)`.
pub fn bp8_order_with(table: &BernoulliTable, m: u32) -> Result<BigUint> {
    check_m(m)?;
    let b2m = table.paper(2 * m)?;
    let ratio = (&BigRat::from_integer(2) * &b2m).checked_div(&BigRat::from_integer(m))?;
    let shift = 4 * m as usize;
    let power = BigUint::one() << (shift - 2);
    let mersenne = (BigUint::one() << (shift - 1)) - 1u32;
    Ok(power * mersenne * ratio.numer_abs())
}

pub fn c_factor(m: u32) -> Result<u32> {
    check_m(m)?;
    Ok(if m <= 2 { 2 } else { 1 })
}

/// Checks the explicit maps `ℤ ⊕ ℤ/(j_m/2) → ℤ ⊕ ℤ/j_m, (x, y) ↦ (x, x + 2y)`
/// for `m ∈ {1, 2}`: injective on `x ∈ [-j_m, j_m]` and the second
/// coordinate agrees with the first mod 2.
pub fn hopf_stabilization_check(m: u32) -> Result<bool> {
    if m != 1 && m != 2 {
        return Err(Error::invalid(format!(
            "the explicit stabilization map exists only for m = 1, 2 (got {m})"
        )));
    }
    let j = j_order(m)?
        .to_i64()
        .ok_or_else(|| Error::invalid("j_m out of range"))?;
    let torsion = j / 2;
    let mut image = HashSet::new();
    let mut injective = true;
    let mut congruent = true;
    for x in -j..=j {
        for y in 0..torsion {
            let s = (x + 2 * y).rem_euclid(j);
            injective &= image.insert((x, s));
            congruent &= (s - x).rem_euclid(2) == 0;
        }
    }
    Ok(injective && congruent)
}

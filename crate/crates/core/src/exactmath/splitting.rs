use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{factorize, sieve, Factorization};
use crate::error::{Error, Result};

/// Unordered pair `{left, right}` of coprime positive integers, stored with
/// `left ≤ right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoprimeSplitting {
    pub left: BigUint,
    pub right: BigUint,
}

impl CoprimeSplitting {
    pub fn new(u: BigUint, v: BigUint) -> Result<Self> {
        if u.is_zero() || v.is_zero() {
            return Err(Error::invalid("splitting entries must be positive"));
        }
        if !u.gcd(&v).is_one() {
            return Err(Error::invalid(format!("{u} and {v} are not coprime")));
        }
        Ok(if u <= v {
            CoprimeSplitting { left: u, right: v }
        } else {
            CoprimeSplitting { left: v, right: u }
        })
    }

    pub fn product(&self) -> BigUint {
        &self.left * &self.right
    }
}

/// All unordered coprime splittings `{u, v}` of `n`, `uv = n`, sorted.
/// There are `2^(ω(n) - 1)` of them for `n > 1`.
pub fn coprime_splittings(n: &BigUint) -> Result<Vec<CoprimeSplitting>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot split 0"));
    }
    Ok(splittings_of(&factorize(n)?))
}

/// Coprime splittings from an existing factorization.
pub fn splittings_of(f: &Factorization) -> Vec<CoprimeSplitting> {
    let powers = f.prime_powers();
    let Some((first, others)) = powers.split_first() else {
        return vec![CoprimeSplitting {
            left: BigUint::one(),
            right: BigUint::one(),
        }];
    };
    // The first prime power always sits in `v`; every subset of the others
    // gives `u`, which yields each unordered pair exactly once.
    let mut out = Vec::with_capacity(1 << others.len());
    for mask in 0u64..(1u64 << others.len()) {
        let mut u = BigUint::one();
        let mut v = first.clone();
        for (i, q) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u *= q;
            } else {
                v *= q;
            }
        }
        let s = if u <= v {
            CoprimeSplitting { left: u, right: v }
        } else {
            CoprimeSplitting { left: v, right: u }
        };
        out.push(s);
    }
    out.sort();
    out
}

/// Exponent of `p` in `n!` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Whether `(2k)!` divides `n`, checked prime by prime.
pub fn factorial_divides(k: u64, n: &BigUint) -> Result<bool> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if n.is_zero() {
        return Err(Error::invalid("n must be at least 1"));
    }
    // v_2((2k)!) ≥ k, so a k beyond the bit length of n can never divide.
    if k > n.bits() {
        return Ok(false);
    }
    let two_k = 2 * k;
    let limit = two_k
        .to_u32()
        .ok_or_else(|| Error::invalid("k too large"))?;
    for p in sieve(limit) {
        let p = p as u64;
        let need = factorial_valuation(two_k, p);
        let mut have = 0u64;
        let mut rest = n.clone();
        while have < need {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            have += 1;
        }
        if have < need {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn as_u64(v: &[CoprimeSplitting]) -> Vec<(u64, u64)> {
        v.iter()
            .map(|s| (s.left.to_u64().unwrap(), s.right.to_u64().unwrap()))
            .collect()
    }

    /// Exhaustive divisor scan.
    fn scan(n: u64) -> Vec<(u64, u64)> {
        (1..=n)
            .take_while(|u| u * u <= n)
            .filter(|u| n % u == 0 && big(*u).gcd(&big(n / u)).is_one())
            .map(|u| (u, n / u))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(as_u64(&coprime_splittings(&big(6)).unwrap()), vec![(1, 6), (2, 3)]);
        assert_eq!(
            as_u64(&coprime_splittings(&big(84)).unwrap()),
            vec![(1, 84), (3, 28), (4, 21), (7, 12)]
        );
        assert_eq!(as_u64(&coprime_splittings(&big(1)).unwrap()), vec![(1, 1)]);
        assert!(coprime_splittings(&big(0)).is_err());
    }

    #[test]
    fn matches_divisor_scan() {
        for n in 1..=3000u64 {
            assert_eq!(as_u64(&coprime_splittings(&big(n)).unwrap()), scan(n), "n = {n}");
        }
    }

    #[test]
    fn factorial_examples() {
        assert!(factorial_divides(2, &big(24)).unwrap());
        assert!(!factorial_divides(2, &big(36)).unwrap());
        assert!(factorial_divides(3, &big(1440)).unwrap());
        assert!(!factorial_divides(3, &big(24)).unwrap());
        assert!(!factorial_divides(1_000_000, &big(1 << 40)).unwrap());
        assert!(factorial_divides(0, &big(1)).is_err());
    }

    #[test]
    fn factorial_matches_direct_product() {
        for k in 1..=6u64 {
            let fact: u64 = (1..=2 * k).product();
            for n in [fact, 2 * fact, fact / 2, fact * 7 + 1, 3 * fact] {
                if n == 0 {
                    continue;
                }
                assert_eq!(factorial_divides(k, &big(n)).unwrap(), n % fact == 0);
            }
        }
    }

    proptest! {
        #[test]
        fn splitting_count_is_power_of_two(n in 2u64..100_000) {
            let omega = factorize(&big(n)).unwrap().distinct_primes();
            let splits = coprime_splittings(&big(n)).unwrap();
            prop_assert_eq!(splits.len(), 1usize << (omega - 1));
            for s in &splits {
                prop_assert_eq!(s.product(), big(n));
                prop_assert!(s.left.gcd(&s.right).is_one());
            }
        }
    }
}

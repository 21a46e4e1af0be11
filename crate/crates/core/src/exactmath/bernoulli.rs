//! Bernoulli numbers in the positive, even-indexed convention:
//! `B_m = |B^std_{2m}|`, so `B_1 = 1/6`, `B_2 = 1/30`, `B_3 = 1/42`.
//!
//! These are the coefficients of the series
//! `1 - t/2 + Σ_{n≥1} (-1)^{n+1} B_n t^{2n} / (2n)!`, which is `t/(e^t - 1)`.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::BigRat;
use crate::error::{Error, Result};

/// Memo table of classical Bernoulli numbers `B^std_n` (with `B^std_1 = -1/2`).
///
/// Readers share the lock; extending the table takes the write lock, so
/// insertion is serialized.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    standard: RwLock<Vec<BigRational>>,
    overrides: BTreeMap<u32, BigRat>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by [`bernoulli_paper`].
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(BernoulliTable::new)
    }

    /// A table that answers `value` for index `m` instead of the true number.
    /// Only used for fault injection in the self-test.
    pub fn with_override(m: u32, value: BigRat) -> Self {
        let mut table = Self::new();
        table.overrides.insert(m, value);
        table
    }

    /// `B_m` in the positive convention, `m ≥ 1`.
    pub fn paper(&self, m: u32) -> Result<BigRat> {
        if m == 0 {
            return Err(Error::invalid("Bernoulli index must be at least 1"));
        }
        if let Some(v) = self.overrides.get(&m) {
            return Ok(v.clone());
        }
        Ok(BigRat::from(self.standard(2 * m as usize).abs()))
    }

    /// Classical `B^std_n`.
    pub fn standard(&self, n: usize) -> BigRational {
        {
            let table = self.standard.read().expect("bernoulli table poisoned");
            if let Some(b) = table.get(n) {
                return b.clone();
            }
        }
        let mut table = self.standard.write().expect("bernoulli table poisoned");
        extend_standard(&mut table, n);
        table[n].clone()
    }
}

/// Extends `table` through index `n` with `Σ_{k=0}^{n} C(n+1,k) B_k = 0`.
fn extend_standard(table: &mut Vec<BigRational>, n: usize) {
    while table.len() <= n {
        let i = table.len();
        if i == 0 {
            table.push(BigRational::one());
            continue;
        }
        if i > 1 && i % 2 == 1 {
            table.push(BigRational::zero());
            continue;
        }
        // sum_{k<i} C(i+1, k) B_k, walking the binomial row incrementally
        let mut binom = BigInt::one();
        let mut sum = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(i + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-sum / BigRational::from_integer(BigInt::from(i + 1)));
    }
}

/// `B_m` in the positive convention from the global table.
pub fn bernoulli_paper(m: u32) -> Result<BigRat> {
    BernoulliTable::global().paper(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Akiyama–Tanigawa: an independent route to B_n (with B_1 = +1/2).
    fn akiyama_tanigawa(n: usize) -> BigRational {
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

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli_paper(1).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_paper(2).unwrap(), rat(1, 30));
        assert_eq!(bernoulli_paper(3).unwrap(), rat(1, 42));
        assert_eq!(bernoulli_paper(4).unwrap(), rat(1, 30));
        assert_eq!(bernoulli_paper(6).unwrap(), rat(691, 2730));
    }

    #[test]
    fn zero_index_rejected() {
        assert_eq!(bernoulli_paper(0).unwrap_err().code(), "invalid-argument");
    }

    #[test]
    fn agrees_with_akiyama_tanigawa() {
        let table = BernoulliTable::new();
        for m in 1..=25u32 {
            let oracle = akiyama_tanigawa(2 * m as usize).abs();
            assert_eq!(table.paper(m).unwrap().as_inner(), &oracle, "m = {m}");
        }
    }

    #[test]
    fn classical_values_with_sign() {
        let table = BernoulliTable::new();
        assert_eq!(table.standard(1), BigRational::new((-1).into(), 2.into()));
        assert_eq!(table.standard(4), BigRational::new((-1).into(), 30.into()));
        assert!(table.standard(7).is_zero());
    }

    #[test]
    fn override_is_local_to_its_table() {
        let bad = BernoulliTable::with_override(3, rat(1, 43));
        assert_eq!(bad.paper(3).unwrap(), rat(1, 43));
        assert_eq!(bernoulli_paper(3).unwrap(), rat(1, 42));
    }

    #[test]
    fn concurrent_readers_agree() {
        let table = BernoulliTable::new();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..4)
                .map(|t| {
                    let table = &table;
                    s.spawn(move || (1..=20u32).map(|m| table.paper(m + t % 2).unwrap()).count())
                })
                .collect();
            for h in handles {
                assert_eq!(h.join().unwrap(), 20);
            }
        });
        assert_eq!(table.paper(2).unwrap(), rat(1, 30));
    }
}

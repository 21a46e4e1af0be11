//! Primality testing and certified factorization.
//!
//! Trial division by the primes below `trial_limit`, then Pollard rho with
//! Brent's cycle detection on whatever composite cofactor is left. Primes
//! below 2^64 are certified by a deterministic Miller–Rabin witness set;
//! larger ones are only probable primes and are flagged as such.

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Witnesses that make Miller–Rabin exact for every n < 2^64.
const DETERMINISTIC_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Proven,
    ProbablePrime,
}

#[derive(Debug, Clone)]
pub struct FactorConfig {
    pub trial_limit: u32,
    /// Total number of Pollard rho iterations allowed across all cofactors.
    pub rho_budget: u64,
    pub mr_rounds: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_limit: 1_000_000,
            rho_budget: 50_000_000,
            mr_rounds: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactor {
    pub prime: BigUint,
    pub exponent: u32,
    pub certainty: Certainty,
}

impl PrimeFactor {
    /// `prime^exponent`.
    pub fn prime_power(&self) -> BigUint {
        num_traits::pow(self.prime.clone(), self.exponent as usize)
    }
}

/// A complete factorization: primes strictly increasing, exponents ≥ 1,
/// product equal to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<PrimeFactor>,
}

impl Factorization {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[PrimeFactor] {
        &self.factors
    }

    /// Number of distinct primes, ω(n).
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|f| &f.prime)
    }

    pub fn prime_powers(&self) -> Vec<BigUint> {
        self.factors.iter().map(PrimeFactor::prime_power).collect()
    }

    pub fn is_proven(&self) -> bool {
        self.factors.iter().all(|f| f.certainty == Certainty::Proven)
    }

    /// Product of the prime powers; equals `value` by construction.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * f.prime_power())
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(FactorConfig::default().trial_limit))
}

pub(crate) fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Miller–Rabin. `None` means composite.
pub fn is_prime(n: &BigUint, rounds: u32) -> Option<Certainty> {
    let two = BigUint::from(2u32);
    if *n < two {
        return None;
    }
    for &p in &DETERMINISTIC_BASES {
        if *n == BigUint::from(p) {
            return Some(Certainty::Proven);
        }
        if (n % p).is_zero() {
            return None;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };

    if n.bits() <= 64 {
        let composite = DETERMINISTIC_BASES
            .iter()
            .any(|&a| witness(&BigUint::from(a)));
        return (!composite).then_some(Certainty::Proven);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba5e);
    for _ in 0..rounds.max(1) {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        if witness(&a) {
            return None;
        }
    }
    Some(Certainty::ProbablePrime)
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigUint, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut found: Vec<(BigUint, Certainty)> = Vec::new();
    let mut rest = n.clone();

    let default_limit = FactorConfig::default().trial_limit;
    let owned;
    let primes: &[u32] = if config.trial_limit == default_limit {
        small_primes()
    } else {
        owned = sieve(config.trial_limit);
        &owned
    };

    let mut trial_done_below: u64 = 1;
    if let Some(mut r) = rest.to_u64() {
        let mut exhausted = false;
        for &p in primes {
            let p = p as u64;
            if p * p > r {
                exhausted = true;
                break;
            }
            while r % p == 0 {
                r /= p;
                found.push((BigUint::from(p), Certainty::Proven));
            }
            trial_done_below = p;
        }
        if exhausted && r > 1 {
            // no factor below p and p^2 > r
            found.push((BigUint::from(r), Certainty::Proven));
            r = 1;
        }
        rest = BigUint::from(r);
    } else {
        for &p in primes {
            while (&rest % p).is_zero() {
                rest /= p;
                found.push((BigUint::from(p), Certainty::Proven));
            }
            trial_done_below = p as u64;
        }
    }

    if !rest.is_one() {
        let bound = BigUint::from(trial_done_below + 1).pow(2);
        if rest < bound {
            // no prime factor below the trial bound, so `rest` is prime
            found.push((rest.clone(), Certainty::Proven));
        } else {
            let mut budget = config.rho_budget;
            let mut stack = vec![rest.clone()];
            while let Some(c) = stack.pop() {
                if c.is_one() {
                    continue;
                }
                if let Some(certainty) = is_prime(&c, config.mr_rounds) {
                    found.push((c, certainty));
                    continue;
                }
                match pollard_brent(&c, &mut budget) {
                    Some(f) => {
                        let other = &c / &f;
                        stack.push(f);
                        stack.push(other);
                    }
                    None => {
                        return Err(Error::FactorizationIncomplete {
                            value: n.clone(),
                            cofactor: c,
                        })
                    }
                }
            }
        }
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut factors: Vec<PrimeFactor> = Vec::new();
    for (p, certainty) in found {
        match factors.last_mut() {
            Some(last) if last.prime == p => last.exponent += 1,
            _ => factors.push(PrimeFactor {
                prime: p,
                exponent: 1,
                certainty,
            }),
        }
    }
    let result = Factorization {
        value: n.clone(),
        factors,
    };
    debug_assert_eq!(&result.product(), n);
    Ok(result)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`, or `None` when the iteration budget runs out.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    const BATCH: u64 = 128;
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            // batch overshot; back up one step at a time
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|p| (p.prime.to_u64().unwrap(), p.exponent))
            .collect()
    }

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_examples() {
        assert!(pairs(&factorize(&big(1)).unwrap()).is_empty());
        assert_eq!(pairs(&factorize(&big(84)).unwrap()), vec![(2, 2), (3, 1), (7, 1)]);
        assert_eq!(pairs(&factorize(&big(504)).unwrap()), vec![(2, 3), (3, 2), (7, 1)]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factorize(&big(0)).unwrap_err().code(), "invalid-argument");
    }

    #[test]
    fn semiprime_beyond_trial_bound() {
        // 1000003 * 1000033, both above the trial-division limit
        let n = big(1_000_003) * big(1_000_033);
        let f = factorize(&n).unwrap();
        assert_eq!(pairs(&f), vec![(1_000_003, 1), (1_000_033, 1)]);
        assert!(f.is_proven());
    }

    #[test]
    fn large_value_marks_probable_primes() {
        // (2^89 - 1) is a Mersenne prime
        let m89 = (BigUint::one() << 89usize) - 1u32;
        let n = &m89 * big(12);
        let f = factorize(&n).unwrap();
        assert_eq!(f.distinct_primes(), 3);
        assert_eq!(f.factors()[2].prime, m89);
        assert_eq!(f.factors()[2].certainty, Certainty::ProbablePrime);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn effort_bound_reports_incomplete() {
        let n = big(1_000_003) * big(1_000_033);
        let config = FactorConfig {
            trial_limit: 100,
            rho_budget: 1,
            mr_rounds: 8,
        };
        let err = factorize_with(&n, &config).unwrap_err();
        assert_eq!(err.code(), "factorization-incomplete");
    }

    #[test]
    fn miller_rabin_known_values() {
        assert_eq!(is_prime(&big(2), 1), Some(Certainty::Proven));
        assert_eq!(is_prime(&big(1), 1), None);
        // strong pseudoprime to bases 2,3,5,7
        assert_eq!(is_prime(&big(3_215_031_751), 1), None);
        assert_eq!(is_prime(&big(18_446_744_073_709_551_557), 1), Some(Certainty::Proven));
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..1_000_000) {
            let f = factorize(&big(n)).unwrap();
            prop_assert_eq!(f.product(), big(n));
            let mut prev = 1u64;
            for p in f.factors() {
                let p64 = p.prime.to_u64().unwrap();
                prop_assert!(p64 > prev);
                prop_assert!(p.exponent >= 1);
                prop_assert!(trial_division_is_prime(p64));
                prev = p64;
            }
        }

        #[test]
        fn rho_path_reconstructs(a in 1_000_000u64..3_000_000, b in 1_000_000u64..3_000_000) {
            let n = big(a) * big(b);
            let f = factorize(&n).unwrap();
            prop_assert_eq!(f.product(), n);
        }
    }
}

//! Exact integer and rational arithmetic used by every other module.

mod bernoulli;
mod primes;
mod rational;
mod splitting;

pub use bernoulli::{bernoulli_paper, BernoulliTable};
pub use primes::{
    factorize, factorize_with, is_prime, Certainty, FactorConfig, Factorization, PrimeFactor,
};
pub use rational::BigRat;
pub use splitting::{
    coprime_splittings, factorial_divides, factorial_valuation, splittings_of, CoprimeSplitting,
};

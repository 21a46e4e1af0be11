//! Exact invariants, classification predicates and class counts for two
//! families of highly connected manifolds, plus a spin^c census on S²×S².
//!
//! Everything is computed with arbitrary-precision integers and rationals:
//!
//! * [`exactmath`]: rationals, Bernoulli numbers, primality, factorization
//!   and coprime splittings.
//! * [`jdata`]: dimension-indexed constants (order of the image of J,
//!   `|bP_{8m}|`, the correction factor `c_m`).
//! * [`forms`]: rank-2 extended symmetric forms over ℤ and ℤ/N and their
//!   equivalence.
//! * [`manifolds`]: the `(4m-1)`-connected `8m`-manifolds keyed by their
//!   obstruction pair, and the `4k`-dimensional family keyed by `{a, b}`.
//! * [`spinc`]: spin^c structures on S²×S² via characteristic vectors.
//! * [`cli`] and [`selftest`]: the command-line front end and its bundled
//!   verification suite.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod forms;
pub mod jdata;
pub mod manifolds;
pub mod selftest;
pub mod spinc;

pub use error::{Error, Result};

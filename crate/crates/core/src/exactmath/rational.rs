use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("rational with zero denominator"));
        }
        Ok(BigRat(BigRational::new(num, den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// The (positive) denominator.
    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    /// Absolute value of the numerator.
    pub fn numer_abs(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.numer().sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &BigRat) -> Result<BigRat> {
        if rhs.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        Ok(BigRat(&self.0 / &rhs.0))
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for BigRat {
    fn from(r: BigRational) -> Self {
        BigRat(r)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a BigRat> for &'a BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &'a BigRat) -> BigRat {
                BigRat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; see `checked_div`.
forward_binop!(Div, div);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

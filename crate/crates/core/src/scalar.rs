//! Coefficient fields.
//!
//! Every algebraic object in this crate is generic over a [`Scalar`]. The
//! exact instantiation used by the checks and the CLI is [`Rational`]
//! (arbitrary precision, never overflows). `f64` also satisfies the bound
//! and is handy for quick numerical evaluation, but equality tests on it are
//! only meaningful for small integer data.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Exact rational numbers backed by arbitrary precision integers.
pub type Rational = num_rational::BigRational;

/// A coefficient field.
pub trait Scalar:
    Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self> + FromPrimitive
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in the scalar field")
    }

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = T> + FromPrimitive
{
}

/// Shorthand for an exact rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Shorthand for an exact integer.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

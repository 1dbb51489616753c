use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Commutative ring with exact equality. Implemented by `Rational`,
/// `MultiPoly` and the quadratic-surd numbers used for equilibria.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
}

/// A ring where exact quotients can be computed when they exist.
pub trait ExactDiv: Ring {
    /// `Some(q)` with `self == q * divisor`, or `None` when no such `q` exists.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl ExactDiv for Rational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }
}

//! Scalar domains the exact linear algebra is generic over.
//!
//! Everything in [`crate::linalg`] works over any [`Domain`]: a commutative
//! integral domain with an exact-division test. Integers, rationals and
//! integer polynomials are provided.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative integral domain with exact division.
pub trait Domain:
    Clone + PartialEq + Debug + Send + Sync + Zero + One + Neg<Output = Self>
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `Some(q)` with `q * rhs == self`, or `None` when no such `q` exists.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl Domain for BigInt {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl Domain for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

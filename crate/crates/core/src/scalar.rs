//! Numeric abstraction shared by every solver.
//!
//! All formulas in this crate are finite sums of products and quotients of
//! edge weights, so anything that behaves like an ordered field works: `f64`,
//! `f32`, or an exact rational such as `num_rational::Ratio<i64>`.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Default relative tolerance for floating-point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Ordered field the game is evaluated over.
pub trait Scalar:
    Num
    + Signed
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts a player or term count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `|a - b| <= tol * max(1, |a|, |b|)`.
    fn approx_eq(self, other: Self, tol: f64) -> bool {
        let scale = Self::one().max_of(self.abs()).max_of(other.abs());
        (self - other).abs() <= Self::tolerance(tol) * scale
    }

    /// Lifts an `f64` tolerance into the scalar type; zero when unrepresentable.
    fn tolerance(tol: f64) -> Self {
        Self::from_f64(tol).unwrap_or_else(Self::zero)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + Copy
        + PartialOrd
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Sums a sequence of scalars.
pub fn sum<T: Scalar>(items: impl IntoIterator<Item = T>) -> T {
    items.into_iter().fold(T::zero(), |acc, x| acc + x)
}

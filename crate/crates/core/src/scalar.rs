//! Scalar abstraction shared by every routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// All arithmetic in the crate is written against this trait so the same
/// code path serves single and double precision. Benchmarks and acceptance
/// checks run in `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless for small integers, which is all the crate ever converts.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable as float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 representable as scalar")
    }

    fn half() -> Self {
        Self::from_f64_lossy(0.5)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Floor of a finite scalar as an integer coefficient.
#[inline]
pub(crate) fn floor_int<T: Real>(v: T) -> i64 {
    // truncate, then step down for negative non-integers; avoids a libm call
    let t = v.to_i64().expect("finite value within i64 range");
    if T::from_int(t) > v {
        t - 1
    } else {
        t
    }
}

/// Rounding with halves away from zero.
#[inline]
pub(crate) fn round_int<T: Real>(v: T) -> i64 {
    v.round().to_i64().expect("finite value within i64 range")
}

#[inline]
pub(crate) fn dot_int<T: Real>(x: &[T], a: &[i64]) -> T {
    x.iter()
        .zip(a)
        .fold(T::zero(), |acc, (&xi, &ai)| acc + xi * T::from_int(ai))
}

#[inline]
pub(crate) fn norm_sq<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v * v)
}

#[inline]
pub(crate) fn norm_sq_int(a: &[i64]) -> i64 {
    a.iter().map(|&v| v * v).sum()
}

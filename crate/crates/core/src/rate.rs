//! Computation rate, the Gram quadratic form and the normalized channel.
//!
//! For a channel `h` and power `P` the Gram matrix is
//! `G = I - P/(1 + P|h|^2) h h^T`. Writing `u = sqrt(P/b) h` with
//! `b = 1 + P|h|^2` gives `G = I - u u^T`, so `a^T G a = |a|^2 - (u^T a)^2`
//! is evaluated in `O(L)` without ever forming `G`.

use crate::error::{Error, Result};
use crate::scalar::{dot_int, norm_sq, norm_sq_int, Real};

/// Real channel gains from `L >= 2` sources to one relay.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector<T> {
    entries: Vec<T>,
}

impl<T: Real> ChannelVector<T> {
    pub const MIN_LEN: usize = 2;

    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.len() < Self::MIN_LEN {
            return Err(Error::TooShort {
                len: entries.len(),
                min: Self::MIN_LEN,
            });
        }
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if entries.iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroChannel);
        }
        Ok(Self { entries })
    }

    pub fn from_f64(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| T::from_f64_lossy(v)).collect())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sq(&self) -> T {
        norm_sq(&self.entries)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.entries
    }
}

/// Linear transmit power `P > 0` (not dB).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerConstraint<T>(T);

impl<T: Real> PowerConstraint<T> {
    pub fn new(p: T) -> Result<Self> {
        if p.is_finite() && p > T::zero() {
            Ok(Self(p))
        } else {
            Err(Error::InvalidPower(format!("{p}")))
        }
    }

    /// `P = 10^(dB/10)`.
    pub fn from_db(db: T) -> Result<Self> {
        let ten = T::from_int(10);
        Self::new(ten.powf(db / ten))
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn halved(self) -> Self {
        Self(self.0 / T::two())
    }
}

/// The channel scaled so that `G = I - u u^T`, with `b = 1 + P|h|^2` cached.
///
/// Invariants: `|u|^2 < 1` and `b > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedChannel<T> {
    u: Vec<T>,
    b: T,
}

impl<T: Real> NormalizedChannel<T> {
    pub fn u(&self) -> &[T] {
        &self.u
    }

    /// Zero-rate bound: any `a` with `|a|^2 >= b` has rate zero.
    pub fn b(&self) -> T {
        self.b
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `|a|^2 - (u^T a)^2` for a real-valued vector.
    pub fn quadratic_form_real(&self, w: &[T]) -> T {
        debug_assert_eq!(w.len(), self.u.len());
        let d = w.iter().zip(&self.u).fold(T::zero(), |acc, (&x, &y)| acc + x * y);
        norm_sq(w) - d * d
    }

    /// Unchecked variant of [`quadratic_form`] for hot loops.
    #[inline]
    pub(crate) fn form_int(&self, a: &[i64]) -> T {
        let d = dot_int(&self.u, a);
        T::from_int(norm_sq_int(a)) - d * d
    }

    /// Rate for a nonzero integer vector whose quadratic form is `f`.
    #[inline]
    pub(crate) fn rate_for(&self, a: &[i64], f: T) -> T {
        rate_from_form(f, T::from_int(norm_sq_int(a)), self.b)
    }
}

pub fn normalize_channel<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> NormalizedChannel<T> {
    let p = p.value();
    let b = T::one() + p * h.norm_sq();
    let scale = (p / b).sqrt();
    NormalizedChannel {
        u: h.as_slice().iter().map(|&v| scale * v).collect(),
        b,
    }
}

pub fn quadratic_form<T: Real>(u: &NormalizedChannel<T>, a: &[i64]) -> Result<T> {
    if a.len() != u.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: a.len(),
        });
    }
    Ok(u.form_int(a))
}

/// `1/2 log2^+(1/f)`, forced to exactly zero once `|a|^2 >= b`.
pub(crate) fn rate_from_form<T: Real>(f: T, a_norm_sq: T, b: T) -> T {
    if a_norm_sq >= b || f >= T::one() {
        return T::zero();
    }
    // f > 0 for nonzero a since G is positive definite; clamp guards rounding
    let f = f.max(T::min_positive_value());
    -T::half() * f.log2()
}

/// Achievable computation rate in bits per real channel use.
pub fn computation_rate<T: Real>(h: &ChannelVector<T>, a: &[i64], p: PowerConstraint<T>) -> Result<T> {
    if a.len() != h.len() {
        return Err(Error::DimensionMismatch {
            expected: h.len(),
            found: a.len(),
        });
    }
    if a.iter().all(|&v| v == 0) {
        return Err(Error::ZeroCoefficient);
    }
    let u = normalize_channel(h, p);
    let f = u.form_int(a);
    Ok(u.rate_for(a, f))
}

/// An integer coefficient vector together with its quadratic form and rate.
///
/// The all-zero vector only appears with the degenerate flag set, for
/// methods such as rounding that have no fallback.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    coeffs: Vec<i64>,
    form: T,
    rate: T,
    degenerate: bool,
}

impl<T: Real> CoefficientVector<T> {
    pub fn evaluate(coeffs: Vec<i64>, u: &NormalizedChannel<T>) -> Result<Self> {
        let form = quadratic_form(u, &coeffs)?;
        if coeffs.iter().all(|&v| v == 0) {
            return Err(Error::ZeroCoefficient);
        }
        let rate = u.rate_for(&coeffs, form);
        Ok(Self {
            coeffs,
            form,
            rate,
            degenerate: false,
        })
    }

    /// Nonzero `coeffs` whose form and rate were computed by the caller.
    pub(crate) fn from_parts(coeffs: Vec<i64>, form: T, rate: T) -> Self {
        Self {
            coeffs,
            form,
            rate,
            degenerate: false,
        }
    }

    /// Zero vector with rate zero.
    pub fn degenerate(len: usize) -> Self {
        Self {
            coeffs: vec![0; len],
            form: T::infinity(),
            rate: T::zero(),
            degenerate: true,
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Cached `a^T G a`; infinite for a degenerate vector.
    pub fn quadratic_form(&self) -> T {
        self.form
    }

    pub fn rate(&self) -> T {
        self.rate
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Flip the sign so that `h^T a >= 0`. Rate and form are unchanged.
    pub(crate) fn sign_normalized(mut self, h: &[T]) -> Self {
        if dot_int(h, &self.coeffs) < T::zero() {
            self.coeffs.iter_mut().for_each(|v| *v = -*v);
        }
        self
    }
}

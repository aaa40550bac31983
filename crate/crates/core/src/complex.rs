//! Complex channels through their real-equivalent lifting.
//!
//! A complex channel `h` of length `L` acts on the real and imaginary parts
//! of each codeword like the two real channels `[Re h; -Im h]` and
//! `[Im h; Re h]` of length `2L`. Only the first is solved; the coefficient
//! for the second follows by a signed permutation. Power is split equally
//! between real and imaginary parts, so the lifted problem runs at `P/2`
//! and the reported rate is the real-equivalent rate at that power.

use crate::error::{Error, Result};
use crate::qpr::qpr_select;
use crate::rate::{normalize_channel, ChannelVector, CoefficientVector, PowerConstraint};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChannel<T> {
    re: Vec<T>,
    im: Vec<T>,
}

impl<T: Real> ComplexChannel<T> {
    pub fn new(re: Vec<T>, im: Vec<T>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch {
                expected: re.len(),
                found: im.len(),
            });
        }
        if re.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if let Some(index) = re.iter().chain(&im).position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if re.iter().chain(&im).all(|v| v.is_zero()) {
            return Err(Error::ZeroChannel);
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> &[T] {
        &self.re
    }

    pub fn im(&self) -> &[T] {
        &self.im
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianIntegerVector {
    pub re: Vec<i64>,
    pub im: Vec<i64>,
}

impl GaussianIntegerVector {
    /// `[Re a; -Im a]`, the coefficient for `[Re h; -Im h]`.
    pub fn lifted(&self) -> Vec<i64> {
        self.re.iter().copied().chain(self.im.iter().map(|&v| -v)).collect()
    }

    /// `[Im a; Re a]`, the coefficient for `[Im h; Re h]`.
    pub fn counterpart(&self) -> Vec<i64> {
        self.im.iter().chain(&self.re).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().chain(&self.im).all(|&v| v == 0)
    }
}

/// A Gaussian integer coefficient and its evaluation on the lifted channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCoefficient<T> {
    pub coeffs: GaussianIntegerVector,
    pub lifted: CoefficientVector<T>,
}

impl<T: Real> ComplexCoefficient<T> {
    /// Real-equivalent rate at power `P/2`.
    pub fn rate(&self) -> T {
        self.lifted.rate()
    }
}

/// `[Re h; -Im h]`.
pub fn complex_to_real_channel<T: Real>(hc: &ComplexChannel<T>) -> Result<ChannelVector<T>> {
    ChannelVector::new(hc.re.iter().copied().chain(hc.im.iter().map(|&v| -v)).collect())
}

/// `[Im h; Re h]`.
pub fn counterpart_real_channel<T: Real>(hc: &ComplexChannel<T>) -> Result<ChannelVector<T>> {
    ChannelVector::new(hc.im.iter().chain(&hc.re).copied().collect())
}

/// Gaussian integer coefficient via the relaxation method on the lifted
/// channel at power `P/2`.
pub fn complex_coeff<T: Real>(hc: &ComplexChannel<T>, p: PowerConstraint<T>, k_u: u32) -> Result<ComplexCoefficient<T>> {
    let lifted = complex_to_real_channel(hc)?;
    let sol = qpr_select(&lifted, p.halved(), k_u)?;
    let (x, y) = sol.coeffs().split_at(hc.len());
    let coeffs = GaussianIntegerVector {
        re: x.to_vec(),
        im: y.iter().map(|&v| -v).collect(),
    };
    Ok(ComplexCoefficient { coeffs, lifted: sol })
}

/// Real-equivalent quadratic form of a Gaussian integer coefficient.
pub fn complex_quadratic_form<T: Real>(hc: &ComplexChannel<T>, a: &GaussianIntegerVector, p: PowerConstraint<T>) -> Result<T> {
    let lifted = complex_to_real_channel(hc)?;
    let u = normalize_channel(&lifted, p.halved());
    crate::rate::quadratic_form(&u, &a.lifted())
}

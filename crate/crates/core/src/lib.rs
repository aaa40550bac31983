//! Integer coefficient selection for compute-and-forward relaying.
//!
//! A relay observing `y = sum_l h(l) x_l + z` decodes an integer
//! combination `a` of the transmitted codewords at rate
//! `1/2 log2^+ (|a|^2 - P (h^T a)^2 / (1 + P|h|^2))^-1`. Maximizing that rate
//! is a shortest vector problem. This crate provides:
//!
//! * [`rate`]: the rate, the Gram quadratic form and the normalized channel;
//! * [`preprocess`]: reduction to a nonnegative ordered channel and back;
//! * [`qpr`]: the quadratic programming relaxation method, which solves the
//!   relaxed problem in closed form and quantizes a handful of scaled
//!   solutions in `O(L)` each;
//! * [`baselines`]: exact enumeration, rounding, quantized search and LLL;
//! * [`complex`]: complex channels through their real-equivalent lifting.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`.

pub mod baselines;
pub mod complex;
pub mod error;
pub mod preprocess;
pub mod qpr;
pub mod rate;
pub mod scalar;

pub use baselines::{
    exhaustive_box_scan, exhaustive_optimal, lll_coeff, quantized_search, rounding_coeff, EnumerationBound, LllParams,
};
pub use complex::{complex_coeff, complex_to_real_channel, ComplexChannel, ComplexCoefficient, GaussianIntegerVector};
pub use error::{Error, Result};
pub use preprocess::{recover_coefficients, to_nonneg_ordered, OrderedChannel, PreprocessRecord};
pub use qpr::{
    base_solution, calibrate_ku, default_ku, determine_k, qpr_candidates, qpr_select, qpr_select_default,
    scaled_solution, successive_quantize, BaseSolution, CandidateSet,
};
pub use rate::{
    computation_rate, normalize_channel, quadratic_form, ChannelVector, CoefficientVector, NormalizedChannel,
    PowerConstraint,
};
pub use scalar::Real;

pub type ChannelVector64 = ChannelVector<f64>;
pub type ChannelVector32 = ChannelVector<f32>;
pub type PowerConstraint64 = PowerConstraint<f64>;
pub type PowerConstraint32 = PowerConstraint<f32>;
pub type NormalizedChannel64 = NormalizedChannel<f64>;
pub type CoefficientVector64 = CoefficientVector<f64>;
pub type CoefficientVector32 = CoefficientVector<f32>;
pub type BaseSolution64 = BaseSolution<f64>;
pub type ComplexChannel64 = ComplexChannel<f64>;
pub type LllParams64 = LllParams<f64>;

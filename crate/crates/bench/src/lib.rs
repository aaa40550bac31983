//! Seeded Monte-Carlo harness for comparing coefficient selection methods.
//!
//! Every cell `(L, SNR, method)` averages the computation rate over a
//! shared channel sample, so all methods see identical channels. Rate
//! columns are bit-reproducible for a given seed regardless of whether
//! trials run serially or in parallel.

pub mod csv;
pub mod error;
pub mod harness;
pub mod methods;
pub mod plot;
pub mod ranges;
pub mod sampling;

pub use error::{BenchError, Result};
pub use harness::{
    calibrate_ku, run_cells, run_k_sensitivity, run_rate_sweep, run_rate_sweep_with, run_timing, CellFailure, SweepConfig, SweepReport, SweepRow,
};
pub use methods::{KuTable, Method, Selector};
pub use sampling::{generate_channels, ChannelSource, GaussianSource};

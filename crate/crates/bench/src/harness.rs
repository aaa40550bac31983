use std::time::Instant;

use cfqpr::{ChannelVector64, PowerConstraint64};
use log::warn;
use rayon::prelude::*;

use crate::error::{BenchError, Result};
use crate::methods::{KuTable, Method, QprCapped, Selector};
use crate::sampling::{ChannelSource, GaussianSource};

/// One `(L, SNR, method)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub dim: usize,
    pub snr_db: f64,
    pub method: String,
    pub trials: usize,
    pub avg_rate: f64,
    pub total_time_ns: u128,
}

/// A cell that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub dim: usize,
    pub snr_db: f64,
    pub method: String,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
    pub failures: Vec<CellFailure>,
}

impl SweepReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn row(&self, dim: usize, snr_db: f64, method: &str) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.dim == dim && r.snr_db == snr_db && r.method == method)
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
    pub ku: KuTable,
    pub parallel: bool,
}

impl SweepConfig {
    pub fn new(dims: Vec<usize>, snr_db: Vec<f64>, trials: usize, seed: u64) -> Self {
        Self {
            dims,
            snr_db,
            trials,
            methods: Method::ALL.to_vec(),
            seed,
            ku: KuTable::default(),
            parallel: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be positive".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2) {
            return Err(BenchError::Config(format!("dimension {d} is below 2")));
        }
        if self.dims.is_empty() || self.snr_db.is_empty() || self.methods.is_empty() {
            return Err(BenchError::Config("dims, SNR points and methods must be non-empty".into()));
        }
        Ok(())
    }
}

fn cell_rates(
    selector: &dyn Selector,
    channels: &[ChannelVector64],
    p: PowerConstraint64,
    parallel: bool,
) -> cfqpr::Result<Vec<f64>> {
    let eval = |h: &ChannelVector64| selector.select(h, p).map(|c| c.rate());
    if parallel {
        channels.par_iter().map(eval).collect()
    } else {
        channels.iter().map(eval).collect()
    }
}

/// Evaluates every selector on one shared sample per dimension.
///
/// The sample for dimension `L` is drawn once and reused across all SNR
/// points and selectors. Averages are summed in trial order, so the rate
/// column does not depend on `parallel`.
pub fn run_cells(
    dims: &[usize],
    snr_db: &[f64],
    trials: usize,
    selectors: &[&dyn Selector],
    source: &dyn ChannelSource,
    parallel: bool,
) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for &dim in dims {
        let channels = source.channels(dim, trials);
        for &snr in snr_db {
            let p = PowerConstraint64::from_db(snr)?;
            for sel in selectors {
                let label = sel.label();
                if sel.max_dim().is_some_and(|m| dim > m) {
                    let msg = format!("skipping {label} at L={dim}: dimension limit is {}", sel.max_dim().unwrap());
                    warn!("{msg}");
                    report.warnings.push(msg);
                    continue;
                }
                let start = Instant::now();
                let rates = cell_rates(*sel, &channels, p, parallel);
                let elapsed = start.elapsed().as_nanos();
                match rates {
                    Ok(rates) => {
                        let avg_rate = rates.iter().sum::<f64>() / rates.len() as f64;
                        report.rows.push(SweepRow {
                            dim,
                            snr_db: snr,
                            method: label,
                            trials: rates.len(),
                            avg_rate,
                            total_time_ns: elapsed,
                        });
                    }
                    Err(e) => report.failures.push(CellFailure {
                        dim,
                        snr_db: snr,
                        method: label,
                        message: e.to_string(),
                    }),
                }
            }
        }
    }
    Ok(report)
}

fn run_methods(cfg: &SweepConfig, source: &dyn ChannelSource, parallel: bool) -> Result<SweepReport> {
    cfg.validate()?;
    let selectors: Vec<_> = cfg.methods.iter().map(|m| m.selector(&cfg.ku)).collect();
    let refs: Vec<&dyn Selector> = selectors.iter().map(|s| s as &dyn Selector).collect();
    run_cells(&cfg.dims, &cfg.snr_db, cfg.trials, &refs, source, parallel)
}

/// Average rate per `(L, SNR, method)` on Gaussian channels.
pub fn run_rate_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    run_methods(cfg, &GaussianSource::new(cfg.seed), cfg.parallel)
}

/// Same as [`run_rate_sweep`] with a caller-supplied channel source.
pub fn run_rate_sweep_with(cfg: &SweepConfig, source: &dyn ChannelSource) -> Result<SweepReport> {
    run_methods(cfg, source, cfg.parallel)
}

/// Timing sweep. Always serial so that `total_time_ns` is wall time of a
/// single thread.
pub fn run_timing(cfg: &SweepConfig) -> Result<SweepReport> {
    run_methods(cfg, &GaussianSource::new(cfg.seed), false)
}

/// QPR with the candidate count capped at each `k`, labelled `qpr_k{k}`.
pub fn run_k_sensitivity(
    dim: usize,
    snr_db: &[f64],
    ks: &[u32],
    trials: usize,
    seed: u64,
    parallel: bool,
) -> Result<SweepReport> {
    if ks.contains(&0) {
        return Err(BenchError::Config("K must be at least 1".into()));
    }
    let mut cfg = SweepConfig::new(vec![dim], snr_db.to_vec(), trials, seed);
    cfg.methods = vec![Method::Qpr];
    cfg.validate()?;
    let capped: Vec<QprCapped> = ks.iter().map(|&k| QprCapped(k)).collect();
    let refs: Vec<&dyn Selector> = capped.iter().map(|s| s as &dyn Selector).collect();
    run_cells(&[dim], snr_db, trials, &refs, &GaussianSource::new(seed), parallel)
}

/// Smallest K whose average QPR rate is within 1% of K+1, measured on
/// `trials` Gaussian channels of dimension `dim` at `snr_db`.
pub fn calibrate_ku(dim: usize, snr_db: f64, trials: usize, seed: u64, max_ku: u32) -> Result<u32> {
    if trials == 0 {
        return Err(BenchError::Config("trials must be positive".into()));
    }
    let channels = GaussianSource::new(seed).channels(dim, trials);
    Ok(cfqpr::calibrate_ku(&channels, PowerConstraint64::from_db(snr_db)?, max_ku)?)
}

//! Deterministic channel generation.
//!
//! Trial `t` of dimension `L` draws from a ChaCha8 stream keyed by
//! `(seed, L)` with stream id `t`, and takes `L` standard normal samples
//! (ziggurat, as implemented by `rand_distr::StandardNormal`). Each trial is
//! therefore addressable on its own, which is what lets parallel runs
//! reproduce serial ones exactly.

use cfqpr::ChannelVector64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Source of the shared channel sample for one dimension.
pub trait ChannelSource: Sync {
    fn channels(&self, dim: usize, trials: usize) -> Vec<ChannelVector64>;
}

/// i.i.d. standard Gaussian entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianSource {
    pub seed: u64,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn trial_rng(&self, dim: usize, trial: usize) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(dim as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(trial as u64);
        rng
    }

    pub fn channel(&self, dim: usize, trial: usize) -> ChannelVector64 {
        let mut rng = self.trial_rng(dim, trial);
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            // an all-zero draw has probability zero; redraw from the same stream if it ever happens
            if let Ok(h) = ChannelVector64::new(v) {
                return h;
            }
        }
    }
}

impl ChannelSource for GaussianSource {
    fn channels(&self, dim: usize, trials: usize) -> Vec<ChannelVector64> {
        (0..trials).map(|t| self.channel(dim, t)).collect()
    }
}

pub fn generate_channels(dim: usize, trials: usize, seed: u64) -> Vec<ChannelVector64> {
    GaussianSource::new(seed).channels(dim, trials)
}

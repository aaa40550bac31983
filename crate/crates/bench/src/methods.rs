use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use cfqpr::baselines::MAX_EXHAUSTIVE_DIM;
use cfqpr::{
    default_ku, exhaustive_optimal, lll_coeff, qpr_select, quantized_search, rounding_coeff, ChannelVector64,
    CoefficientVector64, LllParams64, PowerConstraint64,
};

use crate::error::BenchError;

/// Anything that maps a channel and power to a coefficient vector.
pub trait Selector: Sync {
    fn label(&self) -> String;

    /// Largest dimension this selector accepts, if bounded.
    fn max_dim(&self) -> Option<usize> {
        None
    }

    fn select(&self, h: &ChannelVector64, p: PowerConstraint64) -> cfqpr::Result<CoefficientVector64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Qpr,
    Exhaustive,
    Rounding,
    Qs,
    Lll,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Qpr, Method::Exhaustive, Method::Rounding, Method::Qs, Method::Lll];

    pub fn name(self) -> &'static str {
        match self {
            Method::Qpr => "qpr",
            Method::Exhaustive => "exhaustive",
            Method::Rounding => "rounding",
            Method::Qs => "qs",
            Method::Lll => "lll",
        }
    }

    pub fn selector(self, ku: &KuTable) -> MethodSelector {
        MethodSelector {
            method: self,
            ku: ku.clone(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| BenchError::Config(format!("unknown method {s:?}")))
    }
}

/// Per-dimension K_u overrides on top of the built-in table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KuTable {
    overrides: BTreeMap<usize, u32>,
}

impl KuTable {
    pub fn set(&mut self, dim: usize, k_u: u32) {
        self.overrides.insert(dim, k_u);
    }

    pub fn get(&self, dim: usize) -> u32 {
        self.overrides.get(&dim).copied().unwrap_or_else(|| default_ku(dim))
    }

    /// Parses `L=K` pairs separated by commas, e.g. `4=5,8=6`.
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut table = Self::default();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let bad = || BenchError::Config(format!("bad K_u override {item:?}"));
            let (l, k) = item.split_once('=').ok_or_else(bad)?;
            let l: usize = l.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            table.set(l, k);
        }
        Ok(table)
    }
}

#[derive(Debug, Clone)]
pub struct MethodSelector {
    method: Method,
    ku: KuTable,
}

impl Selector for MethodSelector {
    fn label(&self) -> String {
        self.method.name().to_owned()
    }

    fn max_dim(&self) -> Option<usize> {
        (self.method == Method::Exhaustive).then_some(MAX_EXHAUSTIVE_DIM)
    }

    fn select(&self, h: &ChannelVector64, p: PowerConstraint64) -> cfqpr::Result<CoefficientVector64> {
        match self.method {
            Method::Qpr => qpr_select(h, p, self.ku.get(h.len())),
            Method::Exhaustive => exhaustive_optimal(h, p),
            Method::Rounding => rounding_coeff(h, p),
            Method::Qs => quantized_search(h, p),
            Method::Lll => lll_coeff(h, p, LllParams64::default()),
        }
    }
}

/// QPR with a fixed cap on the number of scaled candidates.
#[derive(Debug, Clone, Copy)]
pub struct QprCapped(pub u32);

impl Selector for QprCapped {
    fn label(&self) -> String {
        format!("qpr_k{}", self.0)
    }

    fn select(&self, h: &ChannelVector64, p: PowerConstraint64) -> cfqpr::Result<CoefficientVector64> {
        qpr_select(h, p, self.0)
    }
}

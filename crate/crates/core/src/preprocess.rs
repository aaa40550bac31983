//! Reduction of an arbitrary channel to its nonnegative ordered form.
//!
//! Rates are invariant under signed permutations applied jointly to `h`
//! and `a`, so every method may work on `hbar = sort(|h|)` and map its
//! answer back. The signed permutation is never materialized: only the sign
//! vector and the sorting permutation are kept.

use crate::error::{Error, Result};
use crate::rate::ChannelVector;
use crate::scalar::Real;

/// Signs of `h` and the sorting permutation of `|h|`.
///
/// `perm` is zero-based: `hbar[l] = |h[perm[l]]|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessRecord {
    signs: Vec<i64>,
    perm: Vec<usize>,
}

impl PreprocessRecord {
    pub fn new(signs: Vec<i64>, perm: Vec<usize>) -> Result<Self> {
        if signs.len() != perm.len() {
            return Err(Error::DimensionMismatch {
                expected: signs.len(),
                found: perm.len(),
            });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidRecord("signs must be +1 or -1"));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidRecord("perm is not a permutation"));
            }
        }
        Ok(Self { signs, perm })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            signs: vec![1; len],
            perm: (0..len).collect(),
        }
    }

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Map a coefficient vector for `h` into the ordered domain.
    pub fn forward_coefficients(&self, a: &[i64]) -> Result<Vec<i64>> {
        self.check_len(a.len())?;
        Ok(self.perm.iter().map(|&p| self.signs[p] * a[p]).collect())
    }

    /// Rebuild `h` from `hbar`. Exact, since only signs are flipped.
    pub fn restore_channel<T: Real>(&self, hbar: &[T]) -> Result<Vec<T>> {
        self.check_len(hbar.len())?;
        let mut h = vec![T::zero(); hbar.len()];
        for (l, &p) in self.perm.iter().enumerate() {
            h[p] = if self.signs[p] < 0 { -hbar[l] } else { hbar[l] };
        }
        Ok(h)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.perm.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.perm.len(),
                found: len,
            })
        }
    }
}

/// A channel whose entries are nonnegative and nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedChannel<T> {
    hbar: ChannelVector<T>,
}

impl<T: Real> OrderedChannel<T> {
    pub fn as_channel(&self) -> &ChannelVector<T> {
        &self.hbar
    }

    pub fn as_slice(&self) -> &[T] {
        self.hbar.as_slice()
    }

    pub fn into_channel(self) -> ChannelVector<T> {
        self.hbar
    }
}

/// `sign(0)` is taken as `+1`; equal magnitudes keep their input order.
pub fn to_nonneg_ordered<T: Real>(h: &ChannelVector<T>) -> (OrderedChannel<T>, PreprocessRecord) {
    let hv = h.as_slice();
    let signs: Vec<i64> = hv.iter().map(|&v| if v < T::zero() { -1 } else { 1 }).collect();
    let mut perm: Vec<usize> = (0..hv.len()).collect();
    // finite entries, so the comparison is total
    perm.sort_by(|&i, &j| hv[i].abs().partial_cmp(&hv[j].abs()).expect("finite channel"));
    let hbar = perm.iter().map(|&p| hv[p].abs()).collect();
    let hbar = ChannelVector::new(hbar).expect("magnitudes of a valid channel");
    (OrderedChannel { hbar }, PreprocessRecord { signs, perm })
}

/// `a(p(l)) = s(p(l)) * abar(l)`.
pub fn recover_coefficients(abar: &[i64], rec: &PreprocessRecord) -> Result<Vec<i64>> {
    rec.check_len(abar.len())?;
    let mut a = vec![0; abar.len()];
    for (l, &p) in rec.perm.iter().enumerate() {
        a[p] = rec.signs[p] * abar[l];
    }
    Ok(a)
}

//! Quadratic programming relaxation of the coefficient search.
//!
//! On a nonnegative ordered channel the relaxed problem
//! `min a^T G a  s.t. a(L) = k` has the closed-form solution `k * a1` with
//! `a1 = [r; 1]` and `r = u(L) / (1 - |u(1:L-1)|^2) * u(1:L-1)`. Each scaled
//! solution is rounded coordinate by coordinate (successive quantization)
//! and the candidate with the smallest quadratic form is returned. The
//! whole pipeline costs `O(L log L + K L)`.

use crate::error::{Error, Result};
use crate::rate::{rate_from_form, ChannelVector, CoefficientVector, NormalizedChannel, PowerConstraint};
use crate::scalar::{floor_int, norm_sq, norm_sq_int, Real};

/// Calibrated upper bounds on K for i.i.d. standard Gaussian channels at
/// 20 dB, indexed by dimension.
pub const KU_TABLE: [(usize, u32); 15] = [
    (2, 2),
    (3, 3),
    (4, 4),
    (5, 5),
    (6, 5),
    (7, 5),
    (8, 6),
    (9, 6),
    (10, 6),
    (11, 6),
    (12, 7),
    (13, 6),
    (14, 6),
    (15, 6),
    (16, 4),
];

/// Cap used for dimensions missing from [`KU_TABLE`]. The per-instance
/// zero-rate bound still applies underneath it.
pub const KU_FALLBACK: u32 = 8;

pub fn default_ku(dim: usize) -> u32 {
    KU_TABLE
        .iter()
        .find(|(l, _)| *l == dim)
        .map_or(KU_FALLBACK, |&(_, k)| k)
}

/// Minimizer of the relaxed problem with `a(L) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSolution<T> {
    a1: Vec<T>,
}

impl<T: Real> BaseSolution<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.a1
    }

    pub fn len(&self) -> usize {
        self.a1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a1.is_empty()
    }

    /// `r`, the free part of the solution.
    pub fn head(&self) -> &[T] {
        &self.a1[..self.a1.len() - 1]
    }
}

/// `|floor(k * a1)|^2 < b`: the k-th scaled solution can still give a
/// positive rate after flooring.
fn below_bound<T: Real>(a1: &[T], k: u32, b: T) -> bool {
    let k = T::from_int(k.into());
    let s = a1.iter().fold(T::zero(), |acc, &v| {
        let q = T::from_int(floor_int(k * v));
        acc + q * q
    });
    s < b
}

/// Writes the base solution for `u` into `a1`.
fn base_into<T: Real>(u: &[T], a1: &mut [T]) {
    let (head, last) = u.split_at(u.len() - 1);
    let scale = last[0] / (T::one() - norm_sq(head));
    for (x, &v) in a1.iter_mut().zip(head) {
        *x = scale * v;
    }
    a1[head.len()] = T::one();
}

fn k_bound<T: Real>(a1: &[T], b: T, k_u: u32) -> u32 {
    let mut hi = k_u.max(1);
    if below_bound(a1, hi, b) {
        return hi;
    }
    let mut lo = 1;
    while hi > lo + 1 {
        let mid = lo + (hi - lo) / 2;
        if below_bound(a1, mid, b) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// One quantized candidate with its cached quadratic form.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub k: u32,
    pub coeffs: Vec<i64>,
    pub form: T,
}

/// The quantized candidates for `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet<T> {
    pub k_max: u32,
    pub candidates: Vec<Candidate<T>>,
}

impl<T: Real> CandidateSet<T> {
    /// First candidate with the smallest form.
    pub fn best(&self) -> Option<&Candidate<T>> {
        self.candidates
            .iter()
            .fold(None, |best: Option<&Candidate<T>>, c| match best {
                Some(b) if b.form <= c.form => Some(b),
                _ => Some(c),
            })
    }
}

/// Closed-form relaxed solution for `a(L) = 1`.
///
/// `u` must come from a nonnegative ordered channel for the result to be
/// meaningful as a quantization seed, but the formula itself holds for any
/// `u` with `|u| < 1`.
pub fn base_solution<T: Real>(u: &NormalizedChannel<T>) -> BaseSolution<T> {
    let mut a1 = vec![T::zero(); u.len()];
    base_into(u.u(), &mut a1);
    BaseSolution { a1 }
}

pub fn scaled_solution<T: Real>(base: &BaseSolution<T>, k: u32) -> Vec<T> {
    let k = T::from_int(k.into());
    let mut out: Vec<T> = base.a1.iter().map(|&v| k * v).collect();
    // exact, but keep the constraint literal
    *out.last_mut().expect("nonempty") = k;
    out
}

/// Largest `K <= k_u` whose floored scaled solution stays inside the
/// zero-rate ball, found by bisection. Returns 1 when even `K = 1` fails.
///
/// The floored norm is nondecreasing in `k` for a nonnegative base
/// solution, which is what makes the bisection exact.
pub fn determine_k<T: Real>(base: &BaseSolution<T>, b: T, k_u: u32) -> u32 {
    k_bound(&base.a1, b, k_u)
}

/// Successive quantization of one relaxed solution.
///
/// Coordinates `1..L-1` are rounded in order; coordinate `l` goes up only
/// when the ceiling strictly lowers the quadratic form given the choices
/// already made. `a_dagger[L-1]` must be integral and is kept.
pub fn successive_quantize<T: Real>(a_dagger: &[T], u: &NormalizedChannel<T>) -> Result<Vec<i64>> {
    if a_dagger.len() != u.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: a_dagger.len(),
        });
    }
    let mut out = vec![0; a_dagger.len()];
    quantize_into(a_dagger.iter().copied(), u.u(), &mut out);
    Ok(out)
}

/// `2 floor(w(l)) - 2 (floor_l(w)^T u) u(l) + 1 - u(l)^2`, which equals
/// `f(ceil_l(w)) - f(floor_l(w))` when `G = I - u u^T`. Negative means the
/// ceiling is strictly better.
pub fn quantization_margin<T: Real>(w: &[T], l: usize, u: &NormalizedChannel<T>) -> T {
    let uv = u.u();
    let fl = w[l].floor();
    let d = w
        .iter()
        .zip(uv)
        .enumerate()
        .fold(T::zero(), |acc, (i, (&x, &y))| acc + if i == l { fl * y } else { x * y });
    T::two() * fl - T::two() * d * uv[l] + T::one() - uv[l] * uv[l]
}

/// Quantizes into `out` and returns the quadratic form of the result,
/// tracking `d = a^T u` incrementally.
#[inline]
fn quantize_into<T: Real>(a_dagger: impl Iterator<Item = T> + Clone, u: &[T], out: &mut [i64]) -> T {
    let n = u.len();
    let mut d = a_dagger.clone().zip(u).fold(T::zero(), |acc, (x, &y)| acc + x * y);
    for (l, v) in a_dagger.enumerate() {
        if l + 1 == n {
            out[l] = floor_int(v);
            break;
        }
        let fi = floor_int(v);
        let fl = T::from_int(fi);
        if fl != v {
            let ul = u[l];
            d = d + (fl - v) * ul;
            if T::two() * fl - T::two() * d * ul + T::one() - ul * ul < T::zero() {
                out[l] = fi + 1;
                d = d + ul;
                continue;
            }
        }
        out[l] = fi;
    }
    T::from_int(norm_sq_int(out)) - d * d
}

/// All candidates `k = 1..=K` for an ordered channel's `u`.
pub fn qpr_candidates<T: Real>(u: &NormalizedChannel<T>, k_u: u32) -> Result<CandidateSet<T>> {
    if k_u == 0 {
        return Err(Error::InvalidKBound);
    }
    let base = base_solution(u);
    let k_max = determine_k(&base, u.b(), k_u);
    let candidates = (1..=k_max)
        .map(|k| {
            let kt = T::from_int(k.into());
            let mut coeffs = vec![0; u.len()];
            let form = quantize_into(base.a1.iter().map(|&v| kt * v), u.u(), &mut coeffs);
            Candidate { k, coeffs, form }
        })
        .collect();
    Ok(CandidateSet { k_max, candidates })
}

/// Writes the best candidate for an ordered channel's `u` into `best`,
/// starting from `e_L`. `a1` and `work` are scratch of the same length.
fn select_ordered<T: Real>(u: &[T], b: T, k_u: u32, a1: &mut [T], work: &mut [i64], best: &mut [i64]) {
    let n = u.len();
    base_into(u, a1);
    let k_max = k_bound(a1, b, k_u);

    best.fill(0);
    best[n - 1] = 1;
    let mut f_min = T::one() - u[n - 1] * u[n - 1];
    for k in 1..=k_max {
        let kt = T::from_int(k.into());
        let f = quantize_into(a1.iter().map(|&v| kt * v), u, work);
        if f < f_min {
            f_min = f;
            best.copy_from_slice(work);
        }
    }
}

/// Coefficient vector chosen by the relaxation method, with at most `k_u`
/// scaled relaxed solutions considered.
///
/// The result always has a strictly positive rate: the unit vector on the
/// strongest channel entry is the initial incumbent.
pub fn qpr_select<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>, k_u: u32) -> Result<CoefficientVector<T>> {
    if k_u == 0 {
        return Err(Error::InvalidKBound);
    }
    // preprocessing and recovery inline, without the intermediate record
    let hv = h.as_slice();
    let n = hv.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&i, &j| hv[i].abs().partial_cmp(&hv[j].abs()).expect("finite channel"));
    let pv = p.value();
    let b = T::one() + pv * h.norm_sq();
    let scale = (pv / b).sqrt();

    let mut reals = vec![T::zero(); 2 * n];
    let (u, a1) = reals.split_at_mut(n);
    for (x, &i) in u.iter_mut().zip(&perm) {
        *x = scale * hv[i].abs();
    }
    let mut ints = vec![0i64; 2 * n];
    let (work, abar) = ints.split_at_mut(n);
    select_ordered(u, b, k_u, a1, work, abar);

    let mut a = vec![0; n];
    for (&i, &v) in perm.iter().zip(abar.iter()) {
        a[i] = if hv[i] < T::zero() { -v } else { v };
    }
    // evaluate on h itself, exactly as computation_rate would
    let d = hv
        .iter()
        .zip(&a)
        .fold(T::zero(), |acc, (&x, &ai)| acc + scale * x * T::from_int(ai));
    let a_sq = norm_sq_int(&a);
    let form = T::from_int(a_sq) - d * d;
    let rate = rate_from_form(form, T::from_int(a_sq), b);
    Ok(CoefficientVector::from_parts(a, form, rate))
}

/// [`qpr_select`] with the default bound for the channel's dimension.
pub fn qpr_select_default<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<CoefficientVector<T>> {
    qpr_select(h, p, default_ku(h.len()))
}

/// Smallest `K_u` whose average rate over `channels` exceeds 99% of the
/// average with `K_u + 1`. Gives up at `max_ku`.
pub fn calibrate_ku<T: Real>(channels: &[ChannelVector<T>], p: PowerConstraint<T>, max_ku: u32) -> Result<u32> {
    if max_ku == 0 {
        return Err(Error::InvalidKBound);
    }
    let avg = |k: u32| -> Result<T> {
        let mut sum = T::zero();
        for h in channels {
            sum = sum + qpr_select(h, p, k)?.rate();
        }
        Ok(sum / T::from_usize(channels.len().max(1)).expect("count"))
    };
    let threshold = T::from_f64_lossy(0.99);
    let mut current = avg(1)?;
    for k in 1..max_ku {
        let next = avg(k + 1)?;
        if current > threshold * next {
            return Ok(k);
        }
        current = next;
    }
    Ok(max_ku)
}

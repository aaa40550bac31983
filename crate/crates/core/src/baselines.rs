//! Comparison methods: exact enumeration, rounding, quantized search and
//! LLL-reduction-based selection.

// dense matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::rate::{normalize_channel, ChannelVector, CoefficientVector, NormalizedChannel, PowerConstraint};
use crate::scalar::{round_int, Real};

/// Largest dimension accepted by the enumeration oracle.
pub const MAX_EXHAUSTIVE_DIM: usize = 6;
/// Largest dimension accepted by the plain box scan.
pub const MAX_BOX_SCAN_DIM: usize = 3;

/// Ball `|a|^2 < radius_sq` outside of which every rate is zero, and the
/// per-coordinate box that contains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationBound<T> {
    pub radius_sq: T,
    /// Largest `m` with `m^2 < radius_sq`.
    pub box_limit: i64,
}

impl<T: Real> EnumerationBound<T> {
    pub fn for_channel(u: &NormalizedChannel<T>) -> Self {
        let radius_sq = u.b();
        let mut m = radius_sq.sqrt().floor().to_i64().expect("finite bound");
        while T::from_int(m * m) >= radius_sq {
            m -= 1;
        }
        while T::from_int((m + 1) * (m + 1)) < radius_sq {
            m += 1;
        }
        Self { radius_sq, box_limit: m }
    }
}

/// Lovász parameter for LLL reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LllParams<T> {
    delta: T,
}

impl<T: Real> LllParams<T> {
    pub fn new(delta: T) -> Result<Self> {
        if delta > T::from_f64_lossy(0.25) && delta <= T::one() {
            Ok(Self { delta })
        } else {
            Err(Error::InvalidDelta(format!("{delta}")))
        }
    }

    pub fn delta(&self) -> T {
        self.delta
    }
}

impl<T: Real> Default for LllParams<T> {
    fn default() -> Self {
        Self {
            delta: T::from_f64_lossy(0.75),
        }
    }
}

fn check_dim<T: Real>(h: &ChannelVector<T>, max: usize) -> Result<()> {
    if h.len() > max {
        Err(Error::DimensionTooLarge { dim: h.len(), max })
    } else {
        Ok(())
    }
}

/// Dense `G = I - u u^T`.
pub fn gram_matrix<T: Real>(u: &NormalizedChannel<T>) -> Vec<Vec<T>> {
    let uv = u.u();
    (0..uv.len())
        .map(|i| {
            (0..uv.len())
                .map(|j| if i == j { T::one() - uv[i] * uv[j] } else { -uv[i] * uv[j] })
                .collect()
        })
        .collect()
}

/// Upper triangular `R` with `G = R^T R`, stored by rows.
pub fn cholesky_upper<T: Real>(g: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = g.len();
    let mut r = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        let mut d = g[i][i];
        for k in 0..i {
            d = d - r[k][i] * r[k][i];
        }
        if d.is_nan() || d <= T::zero() {
            return Err(Error::NotPositiveDefinite);
        }
        let d = d.sqrt();
        r[i][i] = d;
        for j in i + 1..n {
            let mut s = g[i][j];
            for k in 0..i {
                s = s - r[k][i] * r[k][j];
            }
            r[i][j] = s / d;
        }
    }
    Ok(r)
}

/// Depth-first Schnorr-Euchner enumeration of `a^T G a < best` over the
/// Cholesky factor, shrinking the radius on every improvement.
struct Enumerator<'a, T> {
    r: &'a [Vec<T>],
    coeffs: Vec<i64>,
    best: Vec<i64>,
    best_f: T,
}

impl<T: Real> Enumerator<'_, T> {
    fn search(&mut self, level: usize, partial: T) {
        let row = &self.r[level];
        let diag = row[level];
        let shift = (level + 1..row.len()).fold(T::zero(), |acc, j| acc + row[j] * T::from_int(self.coeffs[j]));
        let center = -shift / diag;
        let diag_sq = diag * diag;

        let x0 = round_int(center);
        if !self.visit(level, x0, center, diag_sq, partial) {
            self.coeffs[level] = 0;
            return;
        }
        // zig-zag outward, always taking the closer open side next
        let (mut up, mut down) = (x0 + 1, x0 - 1);
        let (mut up_open, mut down_open) = (true, true);
        while up_open || down_open {
            let go_up = match (up_open, down_open) {
                (true, false) => true,
                (false, true) => false,
                _ => T::from_int(up) - center <= center - T::from_int(down),
            };
            if go_up {
                up_open = self.visit(level, up, center, diag_sq, partial);
                up += 1;
            } else {
                down_open = self.visit(level, down, center, diag_sq, partial);
                down -= 1;
            }
        }
        self.coeffs[level] = 0;
    }

    /// Returns false once `x` is outside the current radius.
    fn visit(&mut self, level: usize, x: i64, center: T, diag_sq: T, partial: T) -> bool {
        let dx = T::from_int(x) - center;
        let cost = partial + diag_sq * dx * dx;
        if cost >= self.best_f {
            return false;
        }
        self.coeffs[level] = x;
        if level == 0 {
            if self.coeffs.iter().any(|&v| v != 0) {
                self.best_f = cost;
                self.best.copy_from_slice(&self.coeffs);
            }
        } else {
            self.search(level - 1, cost);
        }
        true
    }
}

/// Exact minimizer of `a^T G a` over nonzero integer vectors, normalized
/// so that `h^T a >= 0`. Limited to `L <= 6`.
pub fn exhaustive_optimal<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<CoefficientVector<T>> {
    check_dim(h, MAX_EXHAUSTIVE_DIM)?;
    let u = normalize_channel(h, p);
    let r = cholesky_upper(&gram_matrix(&u))?;
    let n = h.len();

    // incumbent: unit vector on the strongest entry, form 1 - u_i^2 < 1
    let (imax, umax) = u
        .u()
        .iter()
        .enumerate()
        .fold((0, T::zero()), |acc, (i, &v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc });
    let mut best = vec![0; n];
    best[imax] = 1;
    let mut e = Enumerator {
        r: &r,
        coeffs: vec![0; n],
        best,
        best_f: T::one() - umax * umax,
    };
    e.search(n - 1, T::zero());
    Ok(CoefficientVector::evaluate(e.best, &u)?.sign_normalized(h.as_slice()))
}

/// Brute-force scan of the box `|a_i| <= m` around the zero-rate ball.
/// Limited to `L <= 3`; used to cross-check the enumeration.
pub fn exhaustive_box_scan<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<CoefficientVector<T>> {
    check_dim(h, MAX_BOX_SCAN_DIM)?;
    let u = normalize_channel(h, p);
    let bound = EnumerationBound::for_channel(&u);
    let m = bound.box_limit;
    let n = h.len();
    let mut a = vec![-m; n];
    let mut best: Option<(Vec<i64>, T)> = None;
    loop {
        let nsq: i64 = a.iter().map(|v| v * v).sum();
        if nsq > 0 && T::from_int(nsq) < bound.radius_sq {
            let f = u.form_int(&a);
            if best.as_ref().map_or(true, |(_, bf)| f < *bf) {
                best = Some((a.clone(), f));
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                let (coeffs, _) = best.expect("unit vectors lie inside the ball");
                return Ok(CoefficientVector::evaluate(coeffs, &u)?.sign_normalized(h.as_slice()));
            }
            if a[i] < m {
                a[i] += 1;
                break;
            }
            a[i] = -m;
            i += 1;
        }
    }
}

/// `a = round(h)` with halves away from zero. An all-zero result is
/// reported as a degenerate vector with rate zero.
pub fn rounding_coeff<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<CoefficientVector<T>> {
    let a: Vec<i64> = h.as_slice().iter().map(|&v| round_int(v)).collect();
    if a.iter().all(|&v| v == 0) {
        return Ok(CoefficientVector::degenerate(a.len()));
    }
    CoefficientVector::evaluate(a, &normalize_channel(h, p))
}

/// Outcome of the two-phase quantized search.
#[derive(Debug, Clone, PartialEq)]
pub struct QsOutcome<T> {
    pub coefficient: CoefficientVector<T>,
    /// Integer amplification chosen in phase one.
    pub alpha0: i64,
    /// Refined amplification; `None` when every grid point rounds to zero.
    pub alpha: Option<T>,
}

/// Grid offset `(i - 10) / 10` for `i = 0..=20`.
pub fn qs_grid<T: Real>(alpha0: i64) -> impl Iterator<Item = T> {
    let a0 = T::from_int(alpha0);
    let ten = T::from_int(10);
    (0..=20).map(move |i| a0 + T::from_int(i - 10) / ten)
}

fn scaled_round<T: Real>(h: &[T], alpha: T) -> Vec<i64> {
    h.iter().map(|&v| round_int(alpha * v)).collect()
}

pub fn quantized_search_detailed<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<QsOutcome<T>> {
    let u = normalize_channel(h, p);
    let hv = h.as_slice();
    let top = p.value().sqrt().floor().to_i64().unwrap_or(1).max(1);

    let mut best: Option<(i64, T)> = None;
    for alpha0 in 1..=top {
        let a = scaled_round(hv, T::from_int(alpha0));
        if a.iter().all(|&v| v == 0) {
            continue;
        }
        let rate = u.rate_for(&a, u.form_int(&a));
        if best.map_or(true, |(_, r)| rate > r) {
            best = Some((alpha0, rate));
        }
    }
    // nothing nonzero in phase one: refine around the largest candidate
    let alpha0 = best.map_or(top, |(a, _)| a);

    let mut refined: Option<(T, Vec<i64>, T)> = None;
    for alpha in qs_grid::<T>(alpha0) {
        let a = scaled_round(hv, alpha);
        if a.iter().all(|&v| v == 0) {
            continue;
        }
        let rate = u.rate_for(&a, u.form_int(&a));
        if refined.as_ref().map_or(true, |(_, _, r)| rate > *r) {
            refined = Some((alpha, a, rate));
        }
    }
    Ok(match refined {
        Some((alpha, a, _)) => QsOutcome {
            coefficient: CoefficientVector::evaluate(a, &u)?,
            alpha0,
            alpha: Some(alpha),
        },
        None => QsOutcome {
            coefficient: CoefficientVector::degenerate(h.len()),
            alpha0,
            alpha: None,
        },
    })
}

/// Quantized search over the amplification factor `alpha`, returning
/// `round(alpha * h)` for the best `alpha` found.
pub fn quantized_search<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>) -> Result<CoefficientVector<T>> {
    Ok(quantized_search_detailed(h, p)?.coefficient)
}

/// A reduced basis (by columns) and the unimodular transform that produced
/// it: `reduced[j] = sum_i transform[j][i] * original[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LllReduction<T> {
    pub basis: Vec<Vec<T>>,
    pub transform: Vec<Vec<i64>>,
}

/// Gram-Schmidt coefficients `mu[i][j]` and squared norms of `b*_i`.
pub fn gram_schmidt<T: Real>(basis: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<T>) {
    let n = basis.len();
    let dot = |x: &[T], y: &[T]| x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    let mut star: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut mu = vec![vec![T::zero(); n]; n];
    let mut norms = vec![T::zero(); n];
    for i in 0..n {
        let mut v = basis[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&basis[i], &star[j]) / norms[j];
            for (x, &s) in v.iter_mut().zip(&star[j]) {
                *x = *x - mu[i][j] * s;
            }
        }
        mu[i][i] = T::one();
        norms[i] = dot(&v, &v);
        star.push(v);
    }
    (mu, norms)
}

/// Floating point LLL with size reduction and the Lovász condition.
pub fn lll_reduce<T: Real>(basis: Vec<Vec<T>>, params: LllParams<T>) -> LllReduction<T> {
    let n = basis.len();
    let mut b = basis;
    let mut u: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return LllReduction { basis: b, transform: u };
    }
    let (mut mu, mut bn) = gram_schmidt(&b);
    let half = T::half();

    let size_reduce = |b: &mut Vec<Vec<T>>, u: &mut Vec<Vec<i64>>, mu: &mut Vec<Vec<T>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = mu[k][l].round();
            let qi = round_int(q);
            let (bl, ul) = (b[l].clone(), u[l].clone());
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x = *x - q * *y;
            }
            for (x, y) in u[k].iter_mut().zip(&ul) {
                *x -= qi * y;
            }
            mu[k][l] = mu[k][l] - q;
            for i in 0..l {
                mu[k][i] = mu[k][i] - q * mu[l][i];
            }
        }
    };

    let mut k = 1;
    let mut swaps = 0usize;
    while k < n && swaps < 100_000 {
        size_reduce(&mut b, &mut u, &mut mu, k, k - 1);
        let m = mu[k][k - 1];
        if bn[k] < (params.delta - m * m) * bn[k - 1] {
            swaps += 1;
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j];
                mu[k][j] = mu[k - 1][j];
                mu[k - 1][j] = t;
            }
            let new_prev = bn[k] + m * m * bn[k - 1];
            mu[k][k - 1] = m * bn[k - 1] / new_prev;
            bn[k] = bn[k - 1] * bn[k] / new_prev;
            bn[k - 1] = new_prev;
            for i in k + 1..n {
                let t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut b, &mut u, &mut mu, k, l);
            }
            k += 1;
        }
    }
    LllReduction { basis: b, transform: u }
}

/// Post-hoc check of size reduction (`|mu| <= 1/2`) and the Lovász
/// condition, with relative slack `tol`.
pub fn is_lll_reduced<T: Real>(basis: &[Vec<T>], delta: T, tol: T) -> bool {
    let (mu, bn) = gram_schmidt(basis);
    let n = basis.len();
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > T::half() + tol {
                return false;
            }
        }
    }
    (1..n).all(|k| (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] <= bn[k] * (T::one() + tol) + tol)
}

/// Exact determinant of a small integer matrix (fraction-free elimination).
pub fn integer_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Coefficient vector from an LLL-reduced basis of the lattice with Gram
/// matrix `G`: the shortest reduced basis vector, sign-normalized.
pub fn lll_coeff<T: Real>(h: &ChannelVector<T>, p: PowerConstraint<T>, params: LllParams<T>) -> Result<CoefficientVector<T>> {
    Ok(lll_coeff_detailed(h, p, params)?.0)
}

/// [`lll_coeff`] together with the reduction it was taken from.
pub fn lll_coeff_detailed<T: Real>(
    h: &ChannelVector<T>,
    p: PowerConstraint<T>,
    params: LllParams<T>,
) -> Result<(CoefficientVector<T>, LllReduction<T>)> {
    let u = normalize_channel(h, p);
    let r = cholesky_upper(&gram_matrix(&u))?;
    let n = h.len();
    // columns of R generate the lattice
    let columns: Vec<Vec<T>> = (0..n).map(|j| (0..n).map(|i| r[i][j]).collect()).collect();
    let red = lll_reduce(columns, params);
    let (jbest, _) = red
        .basis
        .iter()
        .enumerate()
        .map(|(j, col)| (j, col.iter().fold(T::zero(), |acc, &v| acc + v * v)))
        .fold((0, T::infinity()), |acc, (j, nsq)| if nsq < acc.1 { (j, nsq) } else { acc });
    let coeff = CoefficientVector::evaluate(red.transform[jbest].clone(), &u)?.sign_normalized(h.as_slice());
    Ok((coeff, red))
}

//! Independent numerical ground truth.
//!
//! [`symmetric_eigen`] is a dense cyclic Jacobi eigensolver. It knows nothing
//! about circulant structure, so it can be used to check the closed forms and
//! the multiplicity theorems. [`dft_spectrum`] evaluates the circulant
//! eigenvalues as a plain complex exponential sum over the first column.
//!
//! The Jacobi sweep visits every off-diagonal pair exactly once, in
//! round-robin order: each round pairs up all indices disjointly, so the
//! rotations of one round commute and are applied together in one pass.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, PathPower};
use crate::tolerances;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone, Serialize)]
pub struct EigenDecomposition {
    n: usize,
    /// Ascending.
    values: Vec<f64>,
    /// Row-major `n × n`; column `k` is the unit eigenvector of `values[k]`.
    vectors: Vec<f64>,
    /// `max |A V - V diag(values)|`.
    residual: f64,
    sweeps: usize,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector `k` as a fresh vector.
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vectors[i * self.n + k]).collect()
    }

    /// Row-major eigenvector matrix (columns are eigenvectors).
    pub fn vectors(&self) -> &[f64] {
        &self.vectors
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// `max |VᵀV - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n)
                    .map(|i| self.vectors[i * n + a] * self.vectors[i * n + b])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Orthogonal projection of `x` onto the span of the eigenvectors whose
    /// eigenvalue lies within `tol` of `lambda`.
    pub fn project(&self, x: &[f64], lambda: f64, tol: f64) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for k in (0..n).filter(|&k| (self.values[k] - lambda).abs() <= tol) {
            let coeff: f64 = (0..n).map(|i| self.vectors[i * n + k] * x[i]).sum();
            for (i, o) in out.iter_mut().enumerate() {
                *o += coeff * self.vectors[i * n + k];
            }
        }
        out
    }
}

/// Knobs for [`jacobi`].
#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    /// Relative off-diagonal Frobenius threshold.
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Accumulate eigenvectors.
    pub vectors: bool,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            tolerance: tolerances::JACOBI_CONVERGENCE,
            max_sweeps: tolerances::JACOBI_MAX_SWEEPS,
            vectors: true,
        }
    }
}

/// Full decomposition of an adjacency matrix.
pub fn symmetric_eigen(a: &AdjacencyMatrix) -> Result<EigenDecomposition> {
    symmetric_eigen_dense(a.n(), a.to_f64(), JacobiOptions::default())
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn symmetric_eigenvalues(a: &AdjacencyMatrix) -> Result<Vec<f64>> {
    let opts = JacobiOptions {
        vectors: false,
        ..JacobiOptions::default()
    };
    symmetric_eigen_dense(a.n(), a.to_f64(), opts).map(|d| d.values)
}

/// Decomposition of an arbitrary real symmetric row-major matrix.
pub fn symmetric_eigen_dense(
    n: usize,
    data: Vec<f64>,
    opts: JacobiOptions,
) -> Result<EigenDecomposition> {
    if data.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: data.len(),
        });
    }
    if n > tolerances::DENSE_SOLVER_CAP {
        return Err(Error::MatrixTooLarge {
            n,
            cap: tolerances::DENSE_SOLVER_CAP,
        });
    }
    if !(opts.tolerance > 0.0 && opts.tolerance.is_finite()) {
        return Err(Error::InvalidTolerance(opts.tolerance));
    }
    for i in 0..n {
        for j in 0..i {
            if data[i * n + j] != data[j * n + i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    let original = data.clone();
    let (diag, vt, sweeps) = jacobi(n, data, opts)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let values: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = vec![0.0; if opts.vectors { n * n } else { 0 }];
    if let Some(vt) = vt {
        for (col, &k) in order.iter().enumerate() {
            for i in 0..n {
                vectors[i * n + col] = vt[k * n + i];
            }
        }
    }
    let residual = if opts.vectors {
        residual(n, &original, &values, &vectors)
    } else {
        f64::NAN
    };
    Ok(EigenDecomposition {
        n,
        values,
        vectors,
        residual,
        sweeps,
    })
}

fn residual(n: usize, a: &[f64], values: &[f64], v: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..n {
        for i in 0..n {
            let av: f64 = (0..n).map(|j| a[i * n + j] * v[j * n + k]).sum();
            worst = worst.max((av - values[k] * v[i * n + k]).abs());
        }
    }
    worst
}

/// Cyclic Jacobi in circle-method slot layout.
///
/// The order is padded to an even `m = 2h` with an isolated dummy vertex.
/// Slots `0..h` are the top seats and `h..m` the bottom seats; each round
/// rotates the disjoint pairs `(k, h + k)`, then every index moves one seat
/// along the circle while slot 0 stays put. Rows and columns are both kept in
/// slot order, so column rotations act on the two contiguous halves of a row
/// and the reseating is a pair of shifted copies.
///
/// Returns the diagonal, the eigenvectors as rows (row-major `n × n`) when
/// requested, and the number of sweeps performed.
fn jacobi(
    n: usize,
    a: Vec<f64>,
    opts: JacobiOptions,
) -> Result<(Vec<f64>, Option<Vec<f64>>, usize)> {
    if n == 0 {
        return Ok((Vec::new(), opts.vectors.then(Vec::new), 0));
    }
    let m = n + n % 2;
    let h = m / 2;
    let mut state = SlotState::new(n, m, &a, opts.vectors);
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = opts.tolerance * norm;
    // rotations below this size change nothing at working precision
    let negligible = 1e-17 * norm;

    for sweep in 0..=opts.max_sweeps {
        if off_diagonal_norm(m, &state.cur) <= target {
            return Ok(state.finish(n, sweep));
        }
        if sweep == opts.max_sweeps {
            break;
        }
        for _ in 0..m - 1 {
            state.plan(h, negligible);
            state.round(h);
        }
    }
    Err(Error::NoConvergence(opts.max_sweeps))
}

struct SlotState {
    m: usize,
    cur: Vec<f64>,
    next: Vec<f64>,
    vt: Option<(Vec<f64>, Vec<f64>)>,
    /// Original index seated in each slot; `n` marks the dummy.
    label: Vec<usize>,
    dest: Vec<usize>,
    c: Vec<f64>,
    s: Vec<f64>,
    active: Vec<bool>,
    top: Vec<f64>,
    bottom: Vec<f64>,
}

impl SlotState {
    fn new(n: usize, m: usize, a: &[f64], vectors: bool) -> Self {
        let h = m / 2;
        let mut cur = vec![0.0; m * m];
        for i in 0..n {
            cur[i * m..i * m + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        }
        let vt = vectors.then(|| {
            let mut id = vec![0.0; m * m];
            for i in 0..m {
                id[i * m + i] = 1.0;
            }
            (id, vec![0.0; m * m])
        });
        Self {
            m,
            cur,
            next: vec![0.0; m * m],
            vt,
            label: (0..m).collect(),
            dest: seat_destinations(h),
            c: vec![1.0; h],
            s: vec![0.0; h],
            active: vec![false; h],
            top: vec![0.0; m],
            bottom: vec![0.0; m],
        }
    }

    /// Rotation angles for the pairs `(k, h + k)` of the current seating.
    fn plan(&mut self, h: usize, negligible: f64) {
        let m = self.m;
        for k in 0..h {
            let (p, q) = (k, h + k);
            let apq = self.cur[p * m + q];
            if apq.abs() <= negligible {
                self.c[k] = 1.0;
                self.s[k] = 0.0;
                self.active[k] = false;
                continue;
            }
            let theta = (self.cur[q * m + q] - self.cur[p * m + p]) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                0.5 / theta
            } else {
                theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            self.c[k] = c;
            self.s[k] = t * c;
            self.active[k] = true;
        }
    }

    fn round(&mut self, h: usize) {
        #[cfg(target_arch = "x86_64")]
        {
            if std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("fma") {
                // SAFETY: the required CPU features were detected at runtime.
                unsafe { self.round_avx2(h) };
                return;
            }
        }
        self.round_generic(h);
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2,fma")]
    unsafe fn round_avx2(&mut self, h: usize) {
        self.round_generic(h);
    }

    /// Applies `Jᵀ A J` for the planned rotations and reseats rows and
    /// columns into `next`, in a single pass over the matrix.
    #[inline(always)]
    fn round_generic(&mut self, h: usize) {
        let m = self.m;
        for k in 0..h {
            let (p, q) = (k, h + k);
            let (c, s) = (self.c[k], self.s[k]);
            let row_p = &self.cur[p * m..(p + 1) * m];
            let row_q = &self.cur[q * m..(q + 1) * m];
            if self.active[k] {
                combine(row_p, row_q, c, s, &mut self.top, &mut self.bottom);
            } else {
                self.top.copy_from_slice(row_p);
                self.bottom.copy_from_slice(row_q);
            }
            rotate_halves(&mut self.top, &self.c, &self.s);
            rotate_halves(&mut self.bottom, &self.c, &self.s);
            if self.active[k] {
                self.top[q] = 0.0;
                self.bottom[p] = 0.0;
            }
            let (dp, dq) = (self.dest[p], self.dest[q]);
            reseat(&self.top, &mut self.next[dp * m..(dp + 1) * m], h);
            reseat(&self.bottom, &mut self.next[dq * m..(dq + 1) * m], h);

            if let Some((vt, vt_next)) = self.vt.as_mut() {
                let (dp_row, dq_row) = two_rows(vt_next, m, dp, dq);
                let row_p = &vt[p * m..(p + 1) * m];
                let row_q = &vt[q * m..(q + 1) * m];
                if self.active[k] {
                    combine(row_p, row_q, c, s, dp_row, dq_row);
                } else {
                    dp_row.copy_from_slice(row_p);
                    dq_row.copy_from_slice(row_q);
                }
            }
        }
        std::mem::swap(&mut self.cur, &mut self.next);
        if let Some((vt, vt_next)) = self.vt.as_mut() {
            std::mem::swap(vt, vt_next);
        }
        let mut label = vec![0; m];
        for (slot, &l) in self.label.iter().enumerate() {
            label[self.dest[slot]] = l;
        }
        self.label = label;
    }

    fn finish(self, n: usize, sweeps: usize) -> (Vec<f64>, Option<Vec<f64>>, usize) {
        let m = self.m;
        let slots: Vec<usize> = (0..m).filter(|&s| self.label[s] < n).collect();
        let diag = slots.iter().map(|&s| self.cur[s * m + s]).collect();
        let vt = self.vt.map(|(vt, _)| {
            let mut out = Vec::with_capacity(n * n);
            for &s in &slots {
                out.extend_from_slice(&vt[s * m..s * m + n]);
            }
            out
        });
        (diag, vt, sweeps)
    }
}

/// Seat of every slot in the next round of the circle method.
fn seat_destinations(h: usize) -> Vec<usize> {
    let m = 2 * h;
    if h == 1 {
        return vec![0, 1];
    }
    let mut dest = vec![0; m];
    dest[0] = 0;
    dest[h] = 1;
    for k in 1..h - 1 {
        dest[k] = k + 1;
    }
    dest[h - 1] = m - 1;
    for k in 1..h {
        dest[h + k] = h + k - 1;
    }
    dest
}

/// `dst[dest[j]] = src[j]` for the circle-method seating.
#[inline(always)]
fn reseat(src: &[f64], dst: &mut [f64], h: usize) {
    if h == 1 {
        dst.copy_from_slice(src);
        return;
    }
    dst[0] = src[0];
    dst[1] = src[h];
    dst[2..h].copy_from_slice(&src[1..h - 1]);
    dst[h..2 * h - 1].copy_from_slice(&src[h + 1..2 * h]);
    dst[2 * h - 1] = src[h - 1];
}

/// `(out_p, out_q) = (c x - s y, s x + c y)`.
#[inline(always)]
fn combine(x: &[f64], y: &[f64], c: f64, s: f64, out_p: &mut [f64], out_q: &mut [f64]) {
    for (((op, oq), &u), &v) in out_p.iter_mut().zip(out_q.iter_mut()).zip(x).zip(y) {
        *op = c * u - s * v;
        *oq = s * u + c * v;
    }
}

/// Column rotations of one round applied to a single row.
#[inline(always)]
fn rotate_halves(row: &mut [f64], c: &[f64], s: &[f64]) {
    let (top, bottom) = row.split_at_mut(c.len());
    for (((x, y), &c), &s) in top.iter_mut().zip(bottom.iter_mut()).zip(c).zip(s) {
        let (u, v) = (*x, *y);
        *x = c * u - s * v;
        *y = s * u + c * v;
    }
}

fn two_rows(buf: &mut [f64], m: usize, a: usize, b: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = buf.split_at_mut(b * m);
        (&mut lo[a * m..(a + 1) * m], &mut hi[..m])
    } else {
        let (lo, hi) = buf.split_at_mut(a * m);
        let (bq, ap) = (&mut lo[b * m..(b + 1) * m], &mut hi[..m]);
        (ap, bq)
    }
}

fn off_diagonal_norm(n: usize, a: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Number of `values` within `tol` of `lambda`. Logs a warning when some
/// value sits in the ambiguous band `(tol, 10 tol)`.
pub fn numeric_multiplicity(values: &[f64], lambda: f64, tol: f64) -> usize {
    let ambiguous = ambiguous_count(values, lambda, tol);
    if ambiguous > 0 {
        log::warn!(
            "{ambiguous} eigenvalue(s) lie between {tol:e} and {:e} of {lambda}",
            10.0 * tol
        );
    }
    values
        .iter()
        .filter(|&&v| (v - lambda).abs() <= tol)
        .count()
}

/// Values strictly between `tol` and `10 tol` away from `lambda`.
pub fn ambiguous_count(values: &[f64], lambda: f64, tol: f64) -> usize {
    values
        .iter()
        .filter(|&&v| {
            let gap = (v - lambda).abs();
            gap > tol && gap < 10.0 * tol
        })
        .count()
}

/// Full decomposition of `P_n^(d)`.
pub fn path_power_spectrum(g: &PathPower) -> Result<EigenDecomposition> {
    symmetric_eigen(&g.adjacency())
}

/// Eigenvalues of a circulant matrix with first column `first_column`, as the
/// complex sums `Σ_j a_j ω^{j r}`, `ω = exp(2πi / n)`.
pub fn dft_spectrum(first_column: &[u8]) -> Vec<Complex64> {
    let n = first_column.len();
    let tau = std::f64::consts::TAU;
    (0..n)
        .map(|r| {
            first_column
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(j, &a)| {
                    let k = (j as u64 * r as u64 % n as u64) as f64;
                    Complex64::from_polar(a as f64, tau * k / n as f64)
                })
                .sum()
        })
        .collect()
}

/// Cauchy interlacing for sorted spectra: `parent[i] <= sub[i] <= parent[i + k]`
/// (up to `slack`), where `sub` belongs to an induced subgraph with `k`
/// vertices fewer.
pub fn interlaces(parent: &[f64], sub: &[f64], slack: f64) -> bool {
    let Some(k) = parent.len().checked_sub(sub.len()) else {
        return false;
    };
    sub.iter()
        .enumerate()
        .all(|(i, &s)| parent[i] - slack <= s && s <= parent[i + k] + slack)
}

//! Dense complex matrices and the numeric kernel built on them.
//!
//! The operator norm is computed as the square root of the largest
//! eigenvalue of the Gram matrix `M* M` (or `M M*`, whichever is smaller),
//! obtained by cyclic complex Jacobi rotations. Jacobi is slow asymptotically
//! but extremely robust and accurate at the dimensions this crate works with
//! (everything stays well below 512).
//!
//! Random contractions are sampled either as Haar unitaries (QR of a complex
//! Gaussian matrix with phase-fixed diagonal) or as Gaussian matrices scaled
//! to a uniformly random operator norm in `[0, 1]`. Sampling is deterministic
//! given the seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::kahan::KahanC64;
use crate::{Error, Result};

/// Kronecker products and matrix lifts refuse to build matrices with more
/// rows or columns than this.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Wire format: `{"rows":r,"cols":c,"entries":[[re,im],...]}` row-major.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(f64, f64)>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        let data: Vec<Complex64> = r
            .entries
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_entries(r.rows, r.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(|z| (z.re, z.im)).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "entry count {} does not match shape {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Matrix product. Zero entries of the left factor are skipped, which
    /// makes products with block-sparse matrices cheap without changing any
    /// result (the inputs are finite, so skipped terms are exact zeros).
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Self { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    ///
    /// Accurate to about 1e-10 absolutely for entries of modulus up to 10
    /// and dimensions up to 512.
    pub fn operator_norm(&self) -> Result<f64> {
        if !self.is_finite() {
            return Err(Error::InvalidArgument(
                "operator norm of a matrix with non-finite entries".into(),
            ));
        }
        Ok(self.spectral_norm())
    }

    /// Unchecked operator norm for internal use on validated data.
    pub(crate) fn spectral_norm(&self) -> f64 {
        let (gram, n) = self.gram_smaller_side();
        jacobi_top_eigenvalue(gram, n).max(0.0).sqrt()
    }

    /// Gram matrix on the smaller side: `M M*` if `rows <= cols`, else `M* M`.
    fn gram_smaller_side(&self) -> (Vec<Complex64>, usize) {
        let (r, c) = (self.rows, self.cols);
        if r <= c {
            let mut g = vec![Complex64::new(0.0, 0.0); r * r];
            for i in 0..r {
                for j in 0..=i {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..c {
                        acc += self.data[i * c + k] * self.data[j * c + k].conj();
                    }
                    g[i * r + j] = acc;
                    g[j * r + i] = acc.conj();
                }
            }
            (g, r)
        } else {
            let mut g = vec![Complex64::new(0.0, 0.0); c * c];
            for i in 0..c {
                for j in 0..=i {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..r {
                        acc += self.data[k * c + i].conj() * self.data[k * c + j];
                    }
                    g[i * c + j] = acc;
                    g[j * c + i] = acc.conj();
                }
            }
            (g, c)
        }
    }
}

/// Largest eigenvalue of a Hermitian matrix by cyclic complex Jacobi sweeps.
fn jacobi_top_eigenvalue(mut a: Vec<Complex64>, n: usize) -> f64 {
    if n == 1 {
        return a[0].re;
    }
    for _ in 0..60 {
        let mut off2 = 0.0;
        let mut diag2 = 0.0;
        for p in 0..n {
            diag2 += a[p * n + p].norm_sqr();
            for q in p + 1..n {
                off2 += a[p * n + q].norm_sqr();
            }
        }
        let scale = (diag2 + 2.0 * off2).sqrt();
        if scale == 0.0 || off2.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, n, p, q);
            }
        }
    }
    (0..n).map(|p| a[p * n + p].re).fold(f64::NEG_INFINITY, f64::max)
}

/// One complex Jacobi rotation zeroing the (p, q) entry of a Hermitian `a`.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let beta = a[p * n + q];
    let abs_beta = beta.norm();
    if abs_beta == 0.0 {
        return;
    }
    let alpha = a[p * n + p].re;
    let gamma = a[q * n + q].re;
    let tau = (gamma - alpha) / (2.0 * abs_beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = (beta / abs_beta) * (t * c);
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - akq * s.conj();
        let new_kq = akp * s + akq * c;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp.conj();
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = Complex64::new(alpha - t * abs_beta, 0.0);
    a[q * n + q] = Complex64::new(gamma + t * abs_beta, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
}

/// Kronecker product; the (i, j) block of the result is `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows > DEFAULT_DIM_CAP || cols > DEFAULT_DIM_CAP {
        return Err(Error::ResourceLimit(format!(
            "kron target {rows}x{cols} exceeds dimension cap {DEFAULT_DIM_CAP}"
        )));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let z = a.data[i * a.cols + j];
            if z.re == 0.0 && z.im == 0.0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + (j * b.cols + l)] =
                        z * b.data[k * b.cols + l];
                }
            }
        }
    }
    Ok(out)
}

/// Operator norm of `AB - BA` for square matrices of equal dimension.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::InvalidArgument(format!(
            "commutator needs equal square matrices, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    a.matmul(b).sub(&b.matmul(a)).operator_norm()
}

/// How [`random_contraction`] fills the unit ball of `M_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionMode {
    /// Haar-distributed unitary: an extreme point of the ball.
    Unitary,
    /// Gaussian matrix rescaled to a uniform operator norm in `[0, 1]`.
    ScaledGaussian,
}

impl std::str::FromStr for ContractionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary" => Ok(Self::Unitary),
            "scaled-gaussian" => Ok(Self::ScaledGaussian),
            other => Err(Error::InvalidArgument(format!(
                "unknown contraction mode {other:?}; use \"unitary\" or \"scaled-gaussian\""
            ))),
        }
    }
}

impl std::fmt::Display for ContractionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Unitary => write!(f, "unitary"),
            Self::ScaledGaussian => write!(f, "scaled-gaussian"),
        }
    }
}

/// A seeded d x d matrix with operator norm at most `1 + 1e-12`.
///
/// Identical `(d, mode, seed)` triples give bitwise-identical matrices.
pub fn random_contraction(d: usize, mode: ContractionMode, seed: u64) -> ComplexMatrix {
    assert!(d >= 1, "contraction dimension must be positive");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    sample_contraction(&mut rng, d, mode)
}

/// Draws one contraction from an existing RNG stream.
pub fn sample_contraction<R: Rng>(rng: &mut R, d: usize, mode: ContractionMode) -> ComplexMatrix {
    match mode {
        ContractionMode::Unitary => haar_unitary(rng, d),
        ContractionMode::ScaledGaussian => {
            let g = gaussian_matrix(rng, d);
            let norm = g.spectral_norm();
            let u: f64 = rng.random();
            if norm == 0.0 {
                return ComplexMatrix::zeros(d, d);
            }
            g.scaled(Complex64::new(u / norm, 0.0))
        }
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R phase-normalized.
pub fn haar_unitary<R: Rng>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, d);
    let (q, r) = householder_qr(&g);
    let mut u = q;
    // Column j of Q picks up the phase of r_jj.
    for j in 0..d {
        let rjj = r.get(j, j);
        let phase = if rjj.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            rjj / rjj.norm()
        };
        for i in 0..d {
            let z = u.get(i, j);
            u.set(i, j, z * phase);
        }
    }
    u
}

fn gaussian_matrix<R: Rng>(rng: &mut R, d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m.set(i, j, Complex64::new(re, im) / 2f64.sqrt());
        }
    }
    m
}

/// Householder QR of a square complex matrix, `a = Q R`.
fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    assert!(a.is_square());
    let n = a.rows;
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let norm_x: f64 = (k..n).map(|i| r.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r.get(k, k);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        for i in k..n {
            v[i] = r.get(i, k);
        }
        v[k] -= alpha;
        let v_norm: f64 = (k..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in v[k..n].iter_mut() {
            *z /= v_norm;
        }
        // R <- (I - 2 v v*) R
        for j in k..n {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in k..n {
                proj += v[i].conj() * r.get(i, j);
            }
            proj *= 2.0;
            for i in k..n {
                let z = r.get(i, j) - proj * v[i];
                r.set(i, j, z);
            }
        }
        // Q <- Q (I - 2 v v*)
        for i in 0..n {
            let mut proj = Complex64::new(0.0, 0.0);
            for j in k..n {
                proj += q.get(i, j) * v[j];
            }
            proj *= 2.0;
            for j in k..n {
                let z = q.get(i, j) - proj * v[j].conj();
                q.set(i, j, z);
            }
        }
    }
    (q, r)
}

/// Kahan-compensated accumulator for matrix averages.
#[derive(Debug, Clone)]
pub(crate) struct MatrixKahan {
    rows: usize,
    cols: usize,
    cells: Vec<KahanC64>,
}

impl MatrixKahan {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![KahanC64::new(); rows * cols],
        }
    }

    pub fn add(&mut self, m: &ComplexMatrix) {
        debug_assert_eq!((m.rows, m.cols), (self.rows, self.cols));
        for (cell, &z) in self.cells.iter_mut().zip(&m.data) {
            cell.add(z);
        }
    }

    pub fn mean(&self, count: usize) -> ComplexMatrix {
        let scale = 1.0 / count as f64;
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.cells.iter().map(|c| c.value() * scale).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent multiplication for oracles: plain ijk triple loop.
    fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = c(0.0, 0.0);
                for k in 0..a.cols() {
                    acc += a.get(i, k) * b.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Power-iteration oracle for the largest singular value: 10^4 steps of
    /// v <- (M* M) v / |..| starting from a fixed deterministic vector.
    fn power_iteration_norm(m: &ComplexMatrix) -> f64 {
        let h = naive_matmul(&m.adjoint(), m);
        let n = h.rows();
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| c(1.0 + (i as f64) * 0.137, 0.21 - (i as f64) * 0.031))
            .collect();
        let mut lambda = 0.0;
        for _ in 0..10_000 {
            let mut w = vec![c(0.0, 0.0); n];
            for i in 0..n {
                for j in 0..n {
                    w[i] += h.get(i, j) * v[j];
                }
            }
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            lambda = norm;
            for z in w.iter_mut() {
                *z /= norm;
            }
            v = w;
        }
        lambda.sqrt()
    }

    fn random_matrix(d: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        gaussian_matrix(&mut rng, d)
    }

    #[test]
    fn identity_has_norm_one() {
        for d in [1, 2, 5, 16] {
            let n = ComplexMatrix::identity(d).operator_norm().unwrap();
            assert!((n - 1.0).abs() < 1e-12, "d={d}: {n}");
        }
    }

    #[test]
    fn diagonal_norm_is_max_modulus() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, c(3.0, 0.0));
        m.set(1, 1, c(0.0, -4.0));
        assert!((m.operator_norm().unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn operator_norm_matches_power_iteration() {
        for seed in 0..4u64 {
            let m = random_matrix(8, seed);
            let jacobi = m.operator_norm().unwrap();
            let oracle = power_iteration_norm(&m);
            assert!(
                (jacobi - oracle).abs() < 1e-8,
                "seed {seed}: {jacobi} vs {oracle}"
            );
        }
    }

    #[test]
    fn operator_norm_of_rectangular_matrices() {
        let m = ComplexMatrix::from_entries(1, 3, vec![c(3.0, 0.0), c(0.0, 4.0), c(0.0, 0.0)])
            .unwrap();
        assert!((m.operator_norm().unwrap() - 5.0).abs() < 1e-12);
        let t = m.adjoint();
        assert!((t.operator_norm().unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn non_finite_entries_rejected() {
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, c(f64::NAN, 0.0));
        assert!(matches!(
            m.operator_norm(),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn kron_identities() {
        let i6 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap();
        assert_eq!(i6, ComplexMatrix::identity(6));

        let two = ComplexMatrix::from_entries(1, 1, vec![c(2.0, 0.0)]).unwrap();
        let three = ComplexMatrix::from_entries(1, 1, vec![c(3.0, 0.0)]).unwrap();
        assert_eq!(kron(&two, &three).unwrap().get(0, 0), c(6.0, 0.0));
    }

    #[test]
    fn kron_norm_is_multiplicative() {
        for seed in 0..4u64 {
            let a = random_matrix(3, seed);
            let b = random_matrix(3, seed + 100);
            let lhs = kron(&a, &b).unwrap().operator_norm().unwrap();
            let rhs = a.operator_norm().unwrap() * b.operator_norm().unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn kron_respects_dimension_cap() {
        let a = ComplexMatrix::zeros(70, 70);
        assert!(matches!(kron(&a, &a), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn commutator_of_matrix_with_itself_is_zero() {
        let a = random_matrix(4, 7);
        assert!(commutator_norm(&a, &a).unwrap() < 1e-12);
    }

    #[test]
    fn disjoint_tensor_legs_commute() {
        let x = random_matrix(2, 1);
        let y = random_matrix(3, 2);
        let a = kron(&x, &ComplexMatrix::identity(3)).unwrap();
        let b = kron(&ComplexMatrix::identity(2), &y).unwrap();
        assert!(commutator_norm(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn pauli_commutator_oracle() {
        let x = ComplexMatrix::from_entries(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let z = ComplexMatrix::from_entries(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
            .unwrap();
        let direct = naive_matmul(&x, &z).sub(&naive_matmul(&z, &x));
        let oracle = power_iteration_norm(&direct);
        let got = commutator_norm(&x, &z).unwrap();
        assert!((got - oracle).abs() < 1e-10);
        assert!((got - 2.0).abs() < 1e-12);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            commutator_norm(&a, &b),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn scalar_unitary_contraction_is_unimodular() {
        let u = random_contraction(1, ContractionMode::Unitary, 3);
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for seed in 0..4u64 {
            let u = random_contraction(4, ContractionMode::Unitary, seed);
            let gram = u.adjoint().matmul(&u);
            let dev = gram.sub(&ComplexMatrix::identity(4)).max_abs_entry();
            assert!(dev < 1e-12, "seed {seed}: U*U deviates by {dev}");
            let norm = u.operator_norm().unwrap();
            assert!((norm - 1.0).abs() < 1e-10, "seed {seed}: norm {norm}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        for mode in [ContractionMode::Unitary, ContractionMode::ScaledGaussian] {
            let a = random_contraction(5, mode, 42);
            let b = random_contraction(5, mode, 42);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn contractions_stay_in_the_ball() {
        for seed in 0..20u64 {
            for mode in [ContractionMode::Unitary, ContractionMode::ScaledGaussian] {
                let m = random_contraction(3, mode, seed);
                assert!(m.operator_norm().unwrap() <= 1.0 + crate::tol::CONTRACTION_NORM);
            }
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = random_matrix(3, 9);
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"rows\":3"));
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_json_rejects_bad_entry_count() {
        let json = r#"{"rows":2,"cols":2,"entries":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(json).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn triangle_inequality(seed in 0u64..1000) {
                let a = random_matrix(5, seed);
                let b = random_matrix(5, seed + 5000);
                let lhs = a.add(&b).operator_norm().unwrap();
                let rhs = a.operator_norm().unwrap() + b.operator_norm().unwrap();
                prop_assert!(lhs <= rhs + 1e-8);
            }

            #[test]
            fn submultiplicativity(seed in 0u64..1000) {
                let a = random_matrix(5, seed);
                let b = random_matrix(5, seed + 5000);
                let lhs = a.matmul(&b).operator_norm().unwrap();
                let rhs = a.operator_norm().unwrap() * b.operator_norm().unwrap();
                prop_assert!(lhs <= rhs + 1e-8);
            }

            #[test]
            fn unitary_invariance(seed in 0u64..1000) {
                let m = random_matrix(4, seed);
                let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xabcd);
                let u = haar_unitary(&mut rng, 4);
                let v = haar_unitary(&mut rng, 4);
                let rotated = u.matmul(&m).matmul(&v).operator_norm().unwrap();
                prop_assert!((rotated - m.operator_norm().unwrap()).abs() < 1e-8);
            }
        }
    }
}

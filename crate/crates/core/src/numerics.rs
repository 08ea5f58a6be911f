//! Dense complex linear algebra.
//!
//! Cyclic Jacobi for Hermitian eigenproblems, one-sided (Hestenes) Jacobi
//! for singular values, and Cholesky for positive-definite solves. The
//! matrices in this crate are small (fibers are `p x p`, operators are
//! `|G| x |G|`), so the quadratically convergent Jacobi sweeps are both
//! accurate and fast enough.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const MAX_SWEEPS: usize = 60;

/// Relative tolerance used to decide whether a matrix is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return invalid(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            ));
        }
        Ok(Self { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: Complex64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `max |M - M*| <= 1e-12 * max |M|`.
    pub fn is_hermitian(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_abs();
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst <= HERMITIAN_TOL * scale
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: DenseMatrix,
}

/// Real eigenvalues of a Hermitian matrix, in descending order.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(m, false)?.values)
}

pub fn hermitian_eigen(m: &DenseMatrix) -> Result<HermitianEigen> {
    jacobi_eigen(m, true)
}

fn jacobi_eigen(m: &DenseMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    if !m.is_hermitian() {
        return invalid(format!(
            "expected a Hermitian matrix ({}x{})",
            m.rows(),
            m.cols()
        ));
    }
    if !m.is_finite() {
        return invalid("matrix has non-finite entries");
    }
    let n = m.rows();
    // Symmetrize so that round-off in the input cannot break the rotation
    // algebra below.
    let mut a = DenseMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = if want_vectors {
        DenseMatrix::identity(n)
    } else {
        DenseMatrix::zeros(0, 0)
    };

    let total = a.frobenius_norm();
    if total == 0.0 {
        return Ok(HermitianEigen {
            values: vec![0.0; n],
            vectors: if want_vectors { v } else { DenseMatrix::zeros(0, 0) },
        });
    }
    let threshold = f64::EPSILON * total * 1e-2;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let babs = b.norm();
                if babs <= threshold / (n as f64) {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = b / babs; // e^{i phi}
                let theta = (aqq - app) / (2.0 * babs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ph_conj = phase.conj();

                // A <- A U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ph_conj * s;
                    a[(k, q)] = akp * s + akq * ph_conj * c;
                }
                // A <- U^H A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * phase * s;
                    a[(q, k)] = apk * s + aqk * phase * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * ph_conj * s;
                        v[(k, q)] = vkp * s + vkq * ph_conj * c;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        DenseMatrix::from_fn(n, n, |i, k| v[(i, order[k])])
    } else {
        DenseMatrix::zeros(0, 0)
    };
    Ok(HermitianEigen { values, vectors })
}

/// Singular values in descending order; `min(rows, cols)` of them.
pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    if m.rows() < m.cols() {
        return singular_values(&m.adjoint());
    }
    let (rows, cols) = (m.rows(), m.cols());
    // Work on columns stored contiguously.
    let mut u: Vec<Vec<Complex64>> = (0..cols).map(|j| m.column(j)).collect();
    let total: f64 = m.frobenius_norm();
    if total == 0.0 {
        return vec![0.0; cols];
    }
    let eps = f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let alpha: f64 = u[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = u[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = u[i].iter().zip(&u[j]).map(|(a, b)| a.conj() * b).sum();
                let gabs = gamma.norm();
                if gabs <= eps * (alpha * beta).sqrt() || gabs <= eps * eps * total * total {
                    continue;
                }
                rotated = true;
                let phase = gamma / gabs;
                let ph_conj = phase.conj();
                let zeta = (beta - alpha) / (2.0 * gabs);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = u.split_at_mut(j);
                let (ui, uj) = (&mut left[i], &mut right[0]);
                for k in 0..rows {
                    let a = ui[k];
                    let b = uj[k];
                    ui[k] = a * c - b * ph_conj * s;
                    uj[k] = a * s + b * ph_conj * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = u
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Relative cutoff below which an eigenvalue counts as zero.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Solves `M x = b` for Hermitian positive-definite `M`.
pub fn solve_hpd(m: &DenseMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if !m.is_hermitian() {
        return invalid("solve_hpd needs a Hermitian matrix");
    }
    if b.len() != m.rows() {
        return invalid(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        ));
    }
    let n = m.rows();
    let eig = hermitian_eigenvalues(m)?;
    let lambda_max = eig.first().copied().unwrap_or(0.0);
    let lambda_min = eig.last().copied().unwrap_or(0.0);
    if n > 0 && (lambda_min <= RANK_CUTOFF * lambda_max.abs() || lambda_min <= 0.0) {
        return Err(Error::SingularOperator { lambda_min });
    }

    // Cholesky M = L L^*.
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 {
            return Err(Error::SingularOperator { lambda_min });
        }
        let d = d.sqrt();
        l[(j, j)] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    let solve = |rhs: &[Complex64]| -> Vec<Complex64> {
        let mut y = vec![ZERO; n];
        for i in 0..n {
            let mut s = rhs[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        let mut x = vec![ZERO; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * x[k];
            }
            x[i] = s / l[(i, i)];
        }
        x
    };
    let mut x = solve(b);
    // One step of iterative refinement.
    let r: Vec<Complex64> = m.matvec(&x).iter().zip(b).map(|(mx, bi)| bi - mx).collect();
    let dx = solve(&r);
    for (xi, d) in x.iter_mut().zip(dx) {
        *xi += d;
    }
    Ok(x)
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Extreme eigenvalues of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn spectral_bounds(m: &DenseMatrix) -> Result<SpectralBounds> {
    let ev = hermitian_eigenvalues(m)?;
    Ok(SpectralBounds {
        lower: ev.last().copied().unwrap_or(0.0),
        upper: ev.first().copied().unwrap_or(0.0),
    })
}

/// Absolute tolerance for frame, Bessel and Riesz verdicts.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Optimal lower/upper bounds of a frame (or Riesz sequence) with verdicts.
///
/// Shared by the Zak-domain computations and the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBounds {
    pub a_opt: f64,
    pub b_opt: f64,
    pub is_frame: bool,
    pub is_bessel_only: bool,
    pub is_parseval: bool,
}

impl FrameBounds {
    /// Verdicts from extreme spectral values; tiny negative round-off in the
    /// lower value is clamped to zero.
    pub fn from_extremes(lower: f64, upper: f64, tol: f64) -> Self {
        let a = lower.max(0.0);
        let b = upper.max(a);
        let is_frame = a > tol;
        Self {
            a_opt: a,
            b_opt: b,
            is_frame,
            is_bessel_only: !is_frame,
            is_parseval: (a - 1.0).abs() <= tol && (b - 1.0).abs() <= tol,
        }
    }

    pub fn from_spectrum(sorted_desc: &[f64], tol: f64) -> Self {
        Self::from_extremes(
            sorted_desc.last().copied().unwrap_or(0.0),
            sorted_desc.first().copied().unwrap_or(0.0),
            tol,
        )
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        self.is_frame && (self.b_opt - self.a_opt).abs() <= tol * self.b_opt.max(1.0)
    }

    /// Largest relative deviation of either bound, relative to `max(1, bound)`.
    pub fn deviation(&self, other: &Self) -> f64 {
        let da = (self.a_opt - other.a_opt).abs() / self.a_opt.max(other.a_opt).max(1.0);
        let db = (self.b_opt - other.b_opt).abs() / self.b_opt.max(other.b_opt).max(1.0);
        da.max(db)
    }
}

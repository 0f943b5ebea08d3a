//! Dense linear algebra for the small dimensions used here (p is rarely above 10).
//!
//! Everything is row-major `f64`. Symmetric positive definite matrices are
//! factored with Cholesky; inversion and Mahalanobis distances go through the
//! factor rather than an explicit adjugate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::PointSet;

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.dim, x.len(), "matrix/vector dimensions differ");
        (0..self.dim).map(|i| dot(self.row(i), x)).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim).map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        (0..self.dim).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= rel_tol * scale))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        determinant(self.dim, self.data.clone())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Lower-triangular Cholesky factor `L` with `L·Lᵀ = m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    lower: Matrix,
}

impl Cholesky {
    pub fn lower(&self) -> &Matrix {
        &self.lower
    }

    pub fn dim(&self) -> usize {
        self.lower.dim
    }

    /// Solves `L·y = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.lower[(i, k)] * y[k]).sum();
            y[i] = (y[i] - s) / self.lower[(i, i)];
        }
        y
    }

    /// Solves `Lᵀ·x = y`.
    pub fn solve_upper(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.lower[(k, i)] * x[k]).sum();
            x[i] = (x[i] - s) / self.lower[(i, i)];
        }
        x
    }

    /// Solves `m·x = b` for the factored matrix `m`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// `L·z`; maps standard normal draws to draws with covariance `m`.
    pub fn apply(&self, z: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|i| (0..=i).map(|k| self.lower[(i, k)] * z[k]).sum()).collect()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn mean_vector(points: &PointSet) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut mean = vec![0.0; points.dim()];
    for x in points.iter() {
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v;
        }
    }
    let n = points.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    Ok(mean)
}

/// Unbiased sample covariance (divisor `n - 1`).
///
/// Singular output (for example `n <= p`) is not rejected here; it surfaces
/// when the matrix is factored.
pub fn sample_covariance(points: &PointSet) -> Result<Matrix> {
    let p = points.dim();
    if points.len() < 2 {
        return Err(Error::DegenerateData { n: points.len(), dim: p });
    }
    let mean = mean_vector(points)?;
    let mut cov = Matrix::zeros(p);
    for x in points.iter() {
        for i in 0..p {
            let di = x[i] - mean[i];
            for j in 0..=i {
                cov[(i, j)] += di * (x[j] - mean[j]);
            }
        }
    }
    let denom = (points.len() - 1) as f64;
    for i in 0..p {
        for j in 0..=i {
            let v = cov[(i, j)] / denom;
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    Ok(cov)
}

/// Pivots at or below this fraction of the largest diagonal entry are treated
/// as zero.
const PIVOT_REL_TOL: f64 = 1e-12;

pub fn cholesky(m: &Matrix) -> Result<Cholesky> {
    if !m.is_symmetric(1e-12) {
        return Err(Error::NotSpd { pivot: 0 });
    }
    let n = m.dim();
    let max_diag = (0..n).map(|i| m[(i, i)]).fold(0.0_f64, f64::max);
    if max_diag <= 0.0 {
        return Err(Error::NotSpd { pivot: 0 });
    }
    let floor = PIVOT_REL_TOL * max_diag;
    let mut l = Matrix::zeros(n);
    for j in 0..n {
        let s: f64 = (0..j).map(|k| l[(j, k)] * l[(j, k)]).sum();
        let pivot = m[(j, j)] - s;
        if !(pivot > floor) {
            return Err(Error::NotSpd { pivot: j });
        }
        let d = pivot.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let s: f64 = (0..j).map(|k| l[(i, k)] * l[(j, k)]).sum();
            l[(i, j)] = (m[(i, j)] - s) / d;
        }
    }
    Ok(Cholesky { lower: l })
}

pub fn invert_spd(m: &Matrix) -> Result<Matrix> {
    let chol = cholesky(m)?;
    let n = m.dim();
    let mut inv = Matrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        let col = chol.solve(&e);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    // Symmetrize away round-off.
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (inv[(i, j)] + inv[(j, i)]);
            inv[(i, j)] = v;
            inv[(j, i)] = v;
        }
    }
    Ok(inv)
}

/// `(x - mean)ᵀ · inv_cov · (x - mean)`.
pub fn mahalanobis_sq(x: &[f64], mean: &[f64], inv_cov: &Matrix) -> Result<f64> {
    let p = inv_cov.dim();
    for len in [x.len(), mean.len()] {
        if len != p {
            return Err(Error::DimensionMismatch { expected: p, found: len });
        }
    }
    let d: Vec<f64> = x.iter().zip(mean).map(|(a, b)| a - b).collect();
    let q = dot(&d, &inv_cov.mul_vec(&d));
    Ok(q.max(0.0))
}

/// Determinant of the `n×n` row-major matrix in `a` (consumed as scratch).
pub(crate) fn determinant(n: usize, mut a: Vec<f64>) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs())).unwrap_or(col);
        if a[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            if f != 0.0 {
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
    }
    det
}

/// Orthonormal basis builder (modified Gram-Schmidt with reorthogonalization).
#[derive(Debug, Clone)]
pub(crate) struct OrthoBasis {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl OrthoBasis {
    pub(crate) fn new(dim: usize) -> Self {
        Self { dim, vectors: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub(crate) fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the current span.
    pub(crate) fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.vectors {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(ri, bi)| *ri -= c * bi);
            }
        }
        r
    }

    /// Adds `v` if its residual norm exceeds `tol`; returns whether it was added.
    pub(crate) fn try_push(&mut self, v: &[f64], tol: f64) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let r = self.residual(v);
        let nr = norm(&r);
        if nr > tol && self.vectors.len() < self.dim {
            self.vectors.push(r.into_iter().map(|c| c / nr).collect());
            true
        } else {
            false
        }
    }

    /// Extends the span to an orthonormal basis of the whole space and returns
    /// the added (complement) vectors.
    pub(crate) fn complement(&self) -> Vec<Vec<f64>> {
        let mut full = self.clone();
        let mut added = Vec::new();
        for i in 0..self.dim {
            let mut e = vec![0.0; self.dim];
            e[i] = 1.0;
            if full.try_push(&e, 1e-6) {
                added.push(full.vectors.last().cloned().expect("just pushed"));
            }
        }
        added
    }
}

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::rng::{dataset_rng, Role};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, Cholesky, Matrix};
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CovarianceKind {
    A,
    B,
    /// First half of the points from `A`, second half from `B`.
    MixAB,
}

impl CovarianceKind {
    pub const ALL: [CovarianceKind; 3] = [CovarianceKind::A, CovarianceKind::B, CovarianceKind::MixAB];

    pub fn name(self) -> &'static str {
        match self {
            CovarianceKind::A => "A",
            CovarianceKind::B => "B",
            CovarianceKind::MixAB => "mix",
        }
    }
}

impl fmt::Display for CovarianceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CovarianceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(CovarianceKind::A),
            "b" => Ok(CovarianceKind::B),
            "mix" | "ab" | "mixab" | "a,b" => Ok(CovarianceKind::MixAB),
            other => Err(Error::Config(format!("unknown covariance '{other}' (expected A, B or mix)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CovarianceSpec {
    pub kind: CovarianceKind,
    pub p: usize,
}

impl CovarianceSpec {
    pub fn new(kind: CovarianceKind, p: usize) -> Result<Self> {
        if !(2..=3).contains(&p) {
            return Err(Error::Config(format!("covariance structures are defined for p = 2 or 3, got {p}")));
        }
        Ok(Self { kind, p })
    }
}

/// Unit variances, correlation 0.6.
pub fn matrix_a(p: usize) -> Matrix {
    equicorrelated(p, 1.0, 0.6)
}

/// Variance 5, covariance -2.
pub fn matrix_b(p: usize) -> Matrix {
    equicorrelated(p, 5.0, -2.0)
}

fn equicorrelated(p: usize, diag: f64, off: f64) -> Matrix {
    let rows: Vec<Vec<f64>> = (0..p).map(|i| (0..p).map(|j| if i == j { diag } else { off }).collect()).collect();
    Matrix::from_rows(&rows).expect("square by construction")
}

/// `count` draws of `L·z`, `L = cholesky(cov)`, `z` standard normal.
pub fn sample_mvn<R: Rng + ?Sized>(count: usize, cov: &Matrix, rng: &mut R) -> Result<PointSet> {
    let chol = cholesky(cov)?;
    let z = standard_normals(count * cov.dim(), rng);
    Ok(transform(&z, &[(&chol, count)], cov.dim()))
}

fn standard_normals<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// Applies each factor to the next `count` standard-normal vectors in `z`.
fn transform(z: &[f64], parts: &[(&Cholesky, usize)], p: usize) -> PointSet {
    let mut coords = Vec::with_capacity(z.len());
    let mut rows = z.chunks_exact(p);
    for (chol, count) in parts {
        for zi in rows.by_ref().take(*count) {
            coords.extend(chol.apply(zi));
        }
    }
    PointSet::new(p, coords).expect("finite normals map to finite points")
}

/// One dataset of the simulation protocol.
///
/// The standard-normal draws depend on `(base_seed, n, p, replicate, role)`
/// only, never on the covariance kind, so the same replicate under `A` and
/// `B` is one point cloud pushed through two different linear maps.
pub fn make_dataset(spec: CovarianceSpec, n: usize, replicate: usize, role: Role, base_seed: u64) -> Result<PointSet> {
    let p = spec.p;
    if spec.kind == CovarianceKind::MixAB && !n.is_multiple_of(2) {
        return Err(Error::Config(format!("the A/B mixture needs an even n, got {n}")));
    }
    let mut rng = dataset_rng(base_seed, n, p, replicate, role);
    let z = standard_normals(n * p, &mut rng);
    let la = cholesky(&matrix_a(p))?;
    let lb = cholesky(&matrix_b(p))?;
    Ok(match spec.kind {
        CovarianceKind::A => transform(&z, &[(&la, n)], p),
        CovarianceKind::B => transform(&z, &[(&lb, n)], p),
        CovarianceKind::MixAB => transform(&z, &[(&la, n / 2), (&lb, n / 2)], p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sample_covariance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn empty_and_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        assert!(sample_mvn(0, &matrix_a(2), &mut rng).unwrap().is_empty());
        let a = sample_mvn(50, &matrix_b(3), &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
        let b = sample_mvn(50, &matrix_b(3), &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_covariance_recovered() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let pts = sample_mvn(100_000, &Matrix::identity(2), &mut rng).unwrap();
        let s = sample_covariance(&pts).unwrap();
        assert!(s.max_abs_diff(&Matrix::identity(2)) < 0.02);
    }

    #[test]
    fn mixture_rules() {
        let spec = CovarianceSpec::new(CovarianceKind::MixAB, 2).unwrap();
        assert!(matches!(make_dataset(spec, 101, 0, Role::Train, 1), Err(Error::Config(_))));
        assert_eq!(make_dataset(spec, 100, 0, Role::Train, 1).unwrap().len(), 100);
        assert!(CovarianceSpec::new(CovarianceKind::A, 4).is_err());
        assert_eq!("mix".parse::<CovarianceKind>().unwrap(), CovarianceKind::MixAB);
    }

    #[test]
    fn b_is_a_linear_image_of_a() {
        let a = make_dataset(CovarianceSpec::new(CovarianceKind::A, 2).unwrap(), 30, 2, Role::Test(5), 11).unwrap();
        let b = make_dataset(CovarianceSpec::new(CovarianceKind::B, 2).unwrap(), 30, 2, Role::Test(5), 11).unwrap();
        let la = cholesky(&matrix_a(2)).unwrap();
        let lb = cholesky(&matrix_b(2)).unwrap();
        for (xa, xb) in a.iter().zip(b.iter()) {
            let mapped = lb.apply(&la.solve_lower(xa));
            for (u, v) in mapped.iter().zip(xb) {
                assert!((u - v).abs() < 1e-12);
            }
        }
        let other = make_dataset(CovarianceSpec::new(CovarianceKind::A, 2).unwrap(), 30, 3, Role::Test(5), 11).unwrap();
        assert_ne!(a, other);
    }
}

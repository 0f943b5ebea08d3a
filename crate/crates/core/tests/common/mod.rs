//! Independent reference implementations used by the integration tests.
//! None of these call into the hull or intersection code under test.

#![allow(dead_code)]

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use morderstats::experiments::{make_dataset, matrix_a, sample_mvn, CovarianceKind, CovarianceSpec, Role};
use morderstats::PointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_points(n: usize, p: usize, seed: u64) -> PointSet {
    let mut r = rng(seed);
    let coords: Vec<f64> = (0..n * p).map(|_| r.random::<f64>()).collect();
    PointSet::new(p, coords).unwrap()
}

pub fn gaussian_points(n: usize, p: usize, seed: u64) -> PointSet {
    sample_mvn(n, &matrix_a(p), &mut rng(seed)).unwrap()
}

pub fn protocol_points(n: usize, p: usize, replicate: usize, seed: u64) -> PointSet {
    let spec = CovarianceSpec::new(CovarianceKind::A, p).unwrap();
    make_dataset(spec, n, replicate, Role::Train, seed).unwrap()
}

/// Indices of points that are not convex combinations of the other points,
/// decided by linear feasibility. Of exact duplicates only the lowest index
/// can be extreme.
pub fn lp_extreme_points(points: &PointSet) -> Vec<usize> {
    let n = points.len();
    (0..n)
        .filter(|&i| {
            let xi = points.point(i);
            if (0..i).any(|j| points.point(j) == xi) {
                return false;
            }
            let mut lp = Problem::new(OptimizationDirection::Minimize);
            let lambdas: Vec<_> = (0..n)
                .filter(|&j| j != i && points.point(j) != xi)
                .map(|j| (j, lp.add_var(0.0, (0.0, f64::INFINITY))))
                .collect();
            if lambdas.is_empty() {
                return true;
            }
            let ones: Vec<_> = lambdas.iter().map(|&(_, v)| (v, 1.0)).collect();
            lp.add_constraint(&ones, ComparisonOp::Eq, 1.0);
            for (d, &target) in xi.iter().enumerate() {
                let row: Vec<_> = lambdas.iter().map(|&(j, v)| (v, points.point(j)[d])).collect();
                lp.add_constraint(&row, ComparisonOp::Eq, target);
            }
            lp.solve().is_err()
        })
        .collect()
}

/// Fraction of uniform samples in the bounding box that satisfy `inside`,
/// scaled by the box volume.
pub fn monte_carlo_volume(lo: &[f64], hi: &[f64], samples: usize, seed: u64, inside: impl Fn(&[f64]) -> bool) -> f64 {
    let mut r = rng(seed);
    let p = lo.len();
    let mut x = vec![0.0; p];
    let mut hits = 0usize;
    for _ in 0..samples {
        for d in 0..p {
            x[d] = lo[d] + (hi[d] - lo[d]) * r.random::<f64>();
        }
        if inside(&x) {
            hits += 1;
        }
    }
    let box_volume: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    box_volume * hits as f64 / samples as f64
}

pub fn bounding_box(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let p = points[0].len();
    let mut lo = vec![f64::INFINITY; p];
    let mut hi = vec![f64::NEG_INFINITY; p];
    for x in points {
        for d in 0..p {
            lo[d] = lo[d].min(x[d]);
            hi[d] = hi[d].max(x[d]);
        }
    }
    (lo, hi)
}

/// A closed halfplane `a·x <= b` in the plane.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub a: [f64; 2],
    pub b: f64,
}

/// Depth level `k` of a planar point set by brute force: every line through
/// two points, its strict side counts, and the closed majority side(s) of
/// those whose minority count is exactly `k`.
pub fn brute_force_level_halfplanes(points: &PointSet, k: usize, eps: f64) -> Vec<HalfPlane> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (xi, xj) = (points.point(i), points.point(j));
            let d = [xj[0] - xi[0], xj[1] - xi[1]];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            if len < 1e-12 {
                continue;
            }
            let a = [-d[1] / len, d[0] / len];
            let b = a[0] * xi[0] + a[1] * xi[1];
            let (mut below, mut above) = (0, 0);
            for l in 0..n {
                let x = points.point(l);
                let s = a[0] * x[0] + a[1] * x[1] - b;
                if s > eps {
                    above += 1;
                } else if s < -eps {
                    below += 1;
                }
            }
            if below.min(above) != k {
                continue;
            }
            if below >= above {
                out.push(HalfPlane { a, b });
            }
            if above >= below {
                out.push(HalfPlane { a: [-a[0], -a[1]], b: -b });
            }
        }
    }
    out
}

/// Vertices of the intersection of `hs`: every feasible pairwise crossing of
/// two boundary lines, deduplicated.
pub fn brute_force_polygon(hs: &[HalfPlane], eps: f64) -> Vec<[f64; 2]> {
    let mut verts: Vec<[f64; 2]> = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        for g in &hs[i + 1..] {
            let det = h.a[0] * g.a[1] - h.a[1] * g.a[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let x = [(h.b * g.a[1] - h.a[1] * g.b) / det, (h.a[0] * g.b - h.b * g.a[0]) / det];
            if hs.iter().all(|f| f.a[0] * x[0] + f.a[1] * x[1] <= f.b + eps)
                && !verts.iter().any(|v| close(v, &x, 1e-7))
            {
                verts.push(x);
            }
        }
    }
    verts
}

pub fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Whether two vertex lists describe the same set within `tol`.
pub fn same_vertex_set<A: AsRef<[f64]>, B: AsRef<[f64]>>(a: &[A], b: &[B], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| close(x.as_ref(), y.as_ref(), tol)))
        && b.iter().all(|y| a.iter().any(|x| close(x.as_ref(), y.as_ref(), tol)))
}

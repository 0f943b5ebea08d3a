mod common;

use common::*;
use morderstats::geometry::{convex_hull, halfspace_intersection, hyperplane_through, side_counts};
use morderstats::linalg::{cholesky, invert_spd, mahalanobis_sq, mean_vector, sample_covariance, Matrix};
use morderstats::{direct_peel, halfspace_peel, mahal_region, par, Algorithm, PointSet, Tolerance};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn sorted_rows(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Random orthogonal matrix from Gram-Schmidt on Gaussian columns.
fn random_orthogonal(p: usize, seed: u64) -> Matrix {
    let g = gaussian_points(p, p, seed);
    let mut q: Vec<Vec<f64>> = Vec::new();
    for v in g.iter() {
        let mut w = v.to_vec();
        for u in &q {
            let d: f64 = w.iter().zip(u).map(|(a, b)| a * b).sum();
            w.iter_mut().zip(u).for_each(|(a, b)| *a -= d * b);
        }
        let n = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        q.push(w.into_iter().map(|a| a / n).collect());
    }
    Matrix::from_rows(&q).unwrap()
}

fn random_spd(p: usize, seed: u64) -> Matrix {
    let q = random_orthogonal(p, seed);
    let mut r = rng(seed ^ 0xabcdef);
    let mut d = Matrix::zeros(p);
    let diag: Vec<f64> = (0..p).map(|_| 0.1 + 10.0 * r.random::<f64>()).collect();
    let rows: Vec<Vec<f64>> = (0..p).map(|i| (0..p).map(|j| if i == j { diag[i] } else { 0.0 }).collect()).collect();
    d = Matrix::from_rows(&rows).unwrap_or(d);
    q.transpose().mul(&d).mul(&q)
}

/// An invertible affine map `x -> M x + b` with a well-conditioned `M`.
fn random_affine(p: usize, seed: u64) -> (Matrix, Vec<f64>) {
    let mut r = rng(seed);
    let m = random_spd(p, seed).mul(&random_orthogonal(p, seed + 1));
    let b = (0..p).map(|_| 4.0 * r.random::<f64>() - 2.0).collect();
    (m, b)
}

fn apply_affine(points: &PointSet, m: &Matrix, b: &[f64]) -> PointSet {
    points.map_points(|x| m.mul_vec(x).iter().zip(b).map(|(a, c)| a + c).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn hull_idempotent_and_complete(seed in 0u64..10_000, n in 8usize..60, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let hull = convex_hull(&pts, tol()).unwrap();
        for x in pts.iter() {
            prop_assert!(hull.contains(x, tol()));
        }
        let again = convex_hull(&PointSet::from_rows(hull.vertices()).unwrap(), tol()).unwrap();
        prop_assert_eq!(sorted_rows(again.vertices().to_vec()), sorted_rows(hull.vertices().to_vec()));
    }

    #[test]
    fn hull_permutation_invariant(seed in 0u64..10_000, n in 8usize..60, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let mut order: Vec<usize> = (0..n).collect();
        let mut r = rng(seed + 1);
        for i in (1..n).rev() {
            order.swap(i, r.random_range(0..=i));
        }
        let a = convex_hull(&pts, tol()).unwrap();
        let b = convex_hull(&pts.select(&order), tol()).unwrap();
        prop_assert_eq!(sorted_rows(a.vertices().to_vec()), sorted_rows(b.vertices().to_vec()));
        prop_assert!((a.volume() - b.volume()).abs() <= 1e-9 * a.volume().max(1.0));
    }

    #[test]
    fn duality_round_trip(seed in 0u64..10_000, n in 8usize..60, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let hull = convex_hull(&pts, tol()).unwrap();
        let back = halfspace_intersection(hull.facets(), &hull.vertex_centroid(), tol()).unwrap();
        prop_assert!(same_vertex_set(back.vertices(), hull.vertices(), 1e-8));
    }

    #[test]
    fn volume_monotone_under_subsets(seed in 0u64..10_000, n in 12usize..60, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let sub = pts.select(&(0..n / 2 + p + 1).collect::<Vec<_>>());
        let big = convex_hull(&pts, tol()).unwrap();
        let small = convex_hull(&sub, tol()).unwrap();
        prop_assert!(small.volume() <= big.volume() + 1e-9);
    }

    #[test]
    fn planes_through_data_touch_p_points(seed in 0u64..10_000, n in 5usize..40, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let refs: Vec<&[f64]> = (0..p).map(|i| pts.point(i)).collect();
        let plane = hyperplane_through(&refs).unwrap();
        prop_assert!(side_counts(&plane, &pts, tol()).on >= p);
        for x in &refs {
            prop_assert!(plane.signed_distance(x).abs() < 1e-10);
        }
    }

    #[test]
    fn cholesky_and_inverse_round_trip(seed in 0u64..10_000, p in 2usize..7) {
        let m = random_spd(p, seed);
        let l = cholesky(&m).unwrap();
        let rec = l.lower().mul(&l.lower().transpose());
        prop_assert!(rec.max_abs_diff(&m) / m.norm_inf() < 1e-10);
        let inv = invert_spd(&m).unwrap();
        prop_assert!(m.mul(&inv).max_abs_diff(&Matrix::identity(p)) < 1e-9);
    }

    #[test]
    fn mahalanobis_affine_invariant(seed in 0u64..10_000, n in 10usize..50, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let (m, b) = random_affine(p, seed);
        let moved = apply_affine(&pts, &m, &b);
        let d2 = |s: &PointSet, i: usize| {
            let inv = invert_spd(&sample_covariance(s).unwrap()).unwrap();
            mahalanobis_sq(s.point(i), &mean_vector(s).unwrap(), &inv).unwrap()
        };
        for i in 0..n {
            prop_assert!((d2(&pts, i) - d2(&moved, i)).abs() < 1e-8);
        }
        let mean = mean_vector(&pts).unwrap();
        let inv = invert_spd(&sample_covariance(&pts).unwrap()).unwrap();
        let x = pts.point(0);
        let mirror: Vec<f64> = x.iter().zip(&mean).map(|(a, c)| 2.0 * c - a).collect();
        let (u, v) = (mahalanobis_sq(x, &mean, &inv).unwrap(), mahalanobis_sq(&mirror, &mean, &inv).unwrap());
        prop_assert!(u >= 0.0 && (u - v).abs() < 1e-9 * u.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn peels_are_nested(seed in 0u64..10_000, n in 10usize..60, p in 2usize..4, a in 1usize..10) {
        let alpha = a as f64 / 10.0;
        let pts = gaussian_points(n, p, seed);
        for alg in [Algorithm::Halfspace, Algorithm::Direct] {
            let r = alg.run(&pts, alpha, tol()).unwrap();
            for (i, later) in r.peels.iter().enumerate() {
                for earlier in &r.peels[..i] {
                    for v in later.region.vertices() {
                        prop_assert!(earlier.region.contains(v, tol()), "{:?} peel {} leaves an earlier one", alg, i);
                    }
                }
            }
            for w in r.peels.windows(2) {
                prop_assert!(w[1].points_inside <= w[0].points_inside);
                prop_assert!(w[1].k > w[0].k);
            }
            prop_assert!((r.alpha_hat() - (1.0 - r.points_inside() as f64 / n as f64)).abs() < 1e-15);
        }
    }

    #[test]
    fn serial_and_parallel_agree(seed in 0u64..10_000, n in 10usize..50, p in 2usize..4) {
        let pts = gaussian_points(n, p, seed);
        let par_run = halfspace_peel(&pts, 0.5, tol()).unwrap();
        let serial_run = par::serial(|| halfspace_peel(&pts, 0.5, tol()).unwrap());
        prop_assert_eq!(par_run, serial_run);
    }

    #[test]
    fn regions_are_affine_equivariant(seed in 0u64..10_000, n in 10usize..40, a in 1usize..10) {
        let alpha = a as f64 / 10.0;
        let pts = gaussian_points(n, 2, seed);
        let (m, b) = random_affine(2, seed);
        let moved = apply_affine(&pts, &m, &b);
        let sel = |s: &PointSet| mahal_region(s, alpha, tol()).map(|r| r.peels[0].active.clone());
        if let (Ok(x), Ok(y)) = (sel(&pts), sel(&moved)) {
            prop_assert_eq!(x, y);
        }
        for run in [direct_peel, halfspace_peel] {
            let r0 = run(&pts, alpha, tol()).unwrap();
            let r1 = run(&moved, alpha, tol()).unwrap();
            prop_assert_eq!(r0.points_inside(), r1.points_inside());
            let mapped: Vec<Vec<f64>> = r0
                .region()
                .vertices()
                .iter()
                .map(|v| m.mul_vec(v).iter().zip(&b).map(|(x, c)| x + c).collect())
                .collect();
            prop_assert!(same_vertex_set(&mapped, r1.region().vertices(), 1e-6));
        }
    }
}

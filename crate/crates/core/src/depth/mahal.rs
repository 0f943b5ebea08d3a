use super::{check_alpha, make_peel, Algorithm, PeelResult, Termination};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Tolerance};
use crate::linalg::{invert_spd, mahalanobis_sq, mean_vector, sample_covariance};
use crate::points::PointSet;

/// `(1-alpha)n` rounded to the nearest integer, halves to even.
pub fn rounded_count(alpha: f64, n: usize) -> usize {
    let m = ((1.0 - alpha) * n as f64).round_ties_even();
    m.max(0.0) as usize
}

/// Hull of the `rounded_count(alpha, n)` points nearest the sample mean in
/// Mahalanobis distance. Ties in distance go to the lower input index.
///
/// The selected indices are stored as the single peel's `active` set.
pub fn mahal_region(points: &PointSet, alpha: f64, tol: Tolerance) -> Result<PeelResult> {
    check_alpha(alpha)?;
    let n = points.len();
    let p = points.dim();
    let m = rounded_count(alpha, n);
    if m < p + 1 {
        return Err(Error::InsufficientPoints { available: m, required: p + 1 });
    }
    let mean = mean_vector(points)?;
    let inv = invert_spd(&sample_covariance(points)?)?;
    let d2: Vec<f64> = points.iter().map(|x| mahalanobis_sq(x, &mean, &inv)).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d2[a].total_cmp(&d2[b]).then(a.cmp(&b)));
    let mut selected = order[..m].to_vec();
    selected.sort_unstable();

    let region = convex_hull(&points.select(&selected), tol)?.with_vertex_indices(|i| selected[i]);
    let peel = make_peel(0, region, points, selected, tol);
    Ok(PeelResult {
        algorithm: Algorithm::Mahal,
        alpha,
        n,
        peels: vec![peel],
        chosen: 0,
        skipped_k: Vec::new(),
        termination: Termination::Threshold,
    })
}

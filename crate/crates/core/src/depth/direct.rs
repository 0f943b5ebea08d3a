use super::{check_alpha, make_peel, select_output_hull, Algorithm, PeelResult, Termination};
use crate::error::{Error, Result};
use crate::geometry::{boundary_point_indices, convex_hull, convex_hull_any_rank, Tolerance};
use crate::points::PointSet;

/// Direct convex-hull peeling.
///
/// Hulls of the active set are computed and their boundary points removed
/// until at most `(1-alpha)n` points remain active. Every hull computed is a
/// candidate; the output is the one whose contained count is closest to
/// `(1-alpha)n`, deeper hulls winning ties.
pub fn direct_peel(points: &PointSet, alpha: f64, tol: Tolerance) -> Result<PeelResult> {
    check_alpha(alpha)?;
    let n = points.len();
    let p = points.dim();
    if n < p + 1 {
        return Err(Error::InsufficientPoints { available: n, required: p + 1 });
    }
    let target = (1.0 - alpha) * n as f64;

    let mut active: Vec<usize> = (0..n).collect();
    let mut peels = Vec::new();
    let termination = loop {
        let local = points.select(&active);
        let region = if peels.is_empty() { convex_hull(&local, tol)? } else { convex_hull_any_rank(&local, tol)? };
        let region = region.with_vertex_indices(|i| active[i]);
        let on = boundary_point_indices(&local, &region, tol);
        peels.push(make_peel(peels.len(), region, points, active.clone(), tol));
        if active.len() as f64 <= target {
            break Termination::Threshold;
        }
        let mut keep = vec![true; active.len()];
        on.into_iter().for_each(|i| keep[i] = false);
        let mut it = keep.iter();
        active.retain(|_| *it.next().expect("same length"));
        if active.is_empty() {
            break Termination::InsufficientPoints;
        }
    };

    let hats: Vec<f64> = peels.iter().map(|p| p.alpha_hat).collect();
    let chosen = select_output_hull(&hats, alpha)?;
    Ok(PeelResult { algorithm: Algorithm::Direct, alpha, n, peels, chosen, skipped_k: Vec::new(), termination })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_center() {
        let pts = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]).unwrap();
        let r = direct_peel(&pts, 0.5, Tolerance::default()).unwrap();
        assert_eq!(r.peels.len(), 2);
        assert_eq!(r.peels[0].points_inside, 5);
        assert_eq!(r.peels[1].points_inside, 1);
        assert_eq!(r.chosen, 1);
        assert!((r.alpha_hat() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn circle_with_inner_square() {
        let mut rows: Vec<[f64; 2]> = (0..12)
            .map(|i| {
                let t = i as f64 * std::f64::consts::TAU / 12.0;
                [3.0 * t.cos(), 3.0 * t.sin()]
            })
            .collect();
        rows.extend([[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]]);
        let pts = PointSet::from_rows(&rows).unwrap();
        let r = direct_peel(&pts, 0.5, Tolerance::default()).unwrap();
        assert_eq!(r.peels.len(), 2);
        assert_eq!(r.peels[0].points_inside, 16);
        assert_eq!(r.peels[1].points_inside, 4);
        assert_eq!(r.points_inside(), 4);
    }

    #[test]
    fn all_points_on_hull() {
        let pts = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let r = direct_peel(&pts, 0.5, Tolerance::default()).unwrap();
        assert_eq!(r.peels.len(), 1);
        assert_eq!(r.termination, Termination::InsufficientPoints);
        assert_eq!(r.chosen, 0);
    }
}

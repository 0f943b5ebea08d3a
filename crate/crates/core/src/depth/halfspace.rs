use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::planes::{enumerate_indexed_hyperplanes, planes_at_or_above, IndexedHyperplane};
use super::{check_alpha, make_peel, select_output_hull, Algorithm, Peel, PeelResult, Termination};
use crate::error::{Error, Result};
use crate::geometry::{
    boundary_point_indices, convex_hull, convex_hull_any_rank, find_interior_point, halfspace_intersection,
    ConvexRegion, Hyperplane, Tolerance,
};
use crate::points::PointSet;

/// Interior points must clear every halfspace by this many tolerance bands.
const INTERIOR_MARGIN_BANDS: f64 = 1e3;

/// Where the depth index of each plane comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneIndexing {
    /// Planes through all `p`-subsets of the input, indexed once over all `n`
    /// points. Level `k` is then the Tukey region of depth `k + 1`.
    #[default]
    Fixed,
    /// Planes and indices recomputed over the active set before every level.
    /// Depth compounds with the removed layers, so levels are much coarser.
    Reenumerate,
}

/// Halfspace-depth peeling with planes indexed once over all points.
///
/// Level `k = 0` is the hull of all points. Each later level intersects the
/// majority sides of every plane whose minority count is `k` (or the next
/// index that occurs, when `k` itself has no planes). Active points on the
/// boundary of each region are removed before moving on. The loop stops at
/// the first region holding fewer than `(1-alpha)n` of the input points, and
/// the output is whichever of the last two regions has realized alpha
/// closest to `alpha`.
pub fn halfspace_peel(points: &PointSet, alpha: f64, tol: Tolerance) -> Result<PeelResult> {
    halfspace_peel_with(points, alpha, tol, PlaneIndexing::Fixed)
}

pub fn halfspace_peel_with(
    points: &PointSet,
    alpha: f64,
    tol: Tolerance,
    indexing: PlaneIndexing,
) -> Result<PeelResult> {
    check_alpha(alpha)?;
    let n = points.len();
    let p = points.dim();
    if n < p + 1 {
        return Err(Error::InsufficientPoints { available: n, required: p + 1 });
    }
    let target = (1.0 - alpha) * n as f64;

    let mut active: Vec<usize> = (0..n).collect();
    let hull = convex_hull(points, tol)?;
    let mut peels = vec![make_peel(0, hull, points, active.clone(), tol)];
    let mut skipped_k = Vec::new();
    let mut k = 1;

    let levels = match indexing {
        PlaneIndexing::Fixed => Some(Levels::new(enumerate_indexed_hyperplanes(points, &active, tol)?)),
        PlaneIndexing::Reenumerate => None,
    };

    let termination = loop {
        let last = peels.last().expect("at least one peel");
        if (last.points_inside as f64) < target {
            break Termination::Threshold;
        }
        remove_boundary(points, &last.region, &mut active, tol);

        let (level, planes) = match &levels {
            Some(levels) => levels.at_or_above(k),
            None => {
                if active.is_empty() {
                    break Termination::InsufficientPoints;
                }
                if active.len() < p + 1 {
                    // Too few points for a full-dimensional level: the hull of
                    // what is left is the deepest region available.
                    let rest = points.select(&active);
                    let region = relabel(convex_hull_any_rank(&rest, tol)?, &active);
                    let peel = make_peel(k, region, points, active.clone(), tol);
                    let reached = (peel.points_inside as f64) < target;
                    peels.push(peel);
                    break if reached { Termination::Threshold } else { Termination::InsufficientPoints };
                }
                planes_at_or_above(points, &active, k, tol)
            }
        };
        let Some(level) = level else {
            break Termination::Exhausted;
        };
        skipped_k.extend(k..level);
        let halfspaces: Vec<Hyperplane> = planes.iter().flat_map(|h| h.majority_halfspaces()).collect();
        let region = intersect(points, &active, &halfspaces, tol)?;
        k = level + 1;
        if region.is_empty() {
            skipped_k.push(level);
            continue;
        }
        peels.push(make_peel(level, region, points, active.clone(), tol));
    };

    let chosen = choose(&peels, alpha, termination)?;
    Ok(PeelResult { algorithm: Algorithm::Halfspace, alpha, n, peels, chosen, skipped_k, termination })
}

/// Planes grouped by index.
struct Levels {
    by_index: BTreeMap<usize, Vec<IndexedHyperplane>>,
}

impl Levels {
    fn new(planes: Vec<IndexedHyperplane>) -> Self {
        let mut by_index: BTreeMap<usize, Vec<IndexedHyperplane>> = BTreeMap::new();
        for h in planes {
            by_index.entry(h.index).or_default().push(h);
        }
        Self { by_index }
    }

    fn at_or_above(&self, k: usize) -> (Option<usize>, Vec<IndexedHyperplane>) {
        match self.by_index.range(k..).next() {
            Some((&level, planes)) => (Some(level), planes.clone()),
            None => (None, Vec::new()),
        }
    }
}

/// The output rule: compare the last two regions.
fn choose(peels: &[Peel], alpha: f64, termination: Termination) -> Result<usize> {
    if termination != Termination::Threshold {
        return Ok(peels.len() - 1);
    }
    let start = peels.len().saturating_sub(2);
    let hats: Vec<f64> = peels[start..].iter().map(|p| p.alpha_hat).collect();
    Ok(start + select_output_hull(&hats, alpha)?)
}

fn remove_boundary(points: &PointSet, region: &ConvexRegion, active: &mut Vec<usize>, tol: Tolerance) {
    let local = points.select(active);
    let on = boundary_point_indices(&local, region, tol);
    let mut keep = vec![true; active.len()];
    for i in on {
        keep[i] = false;
    }
    let mut it = keep.iter();
    active.retain(|_| *it.next().expect("same length"));
}

/// Intersection of `halfspaces`, falling back to the hull of the input
/// points satisfying all of them when the intersection has no interior.
fn intersect(points: &PointSet, active: &[usize], halfspaces: &[Hyperplane], tol: Tolerance) -> Result<ConvexRegion> {
    let dim = points.dim();
    let margin = INTERIOR_MARGIN_BANDS * tol.scaled(points.scale());
    let all: Vec<usize>;
    let pool = if active.is_empty() {
        all = (0..points.len()).collect();
        &all
    } else {
        active
    };
    let mut centroid = vec![0.0; dim];
    for &i in pool {
        centroid.iter_mut().zip(points.point(i)).for_each(|(c, x)| *c += x);
    }
    centroid.iter_mut().for_each(|c| *c /= pool.len() as f64);

    if let Some((interior, _)) = find_interior_point(halfspaces, &centroid, margin) {
        return halfspace_intersection(halfspaces, &interior, tol);
    }
    let inside: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let x = points.point(i);
            halfspaces.iter().all(|h| h.signed_distance(x) <= tol.band(h.offset))
        })
        .collect();
    let rest = points.select(&inside);
    Ok(relabel(convex_hull_any_rank(&rest, tol)?, &inside))
}

/// Maps vertex indices of a hull of `points.select(map)` back to input indices.
fn relabel(region: ConvexRegion, map: &[usize]) -> ConvexRegion {
    region.with_vertex_indices(|i| map[i])
}

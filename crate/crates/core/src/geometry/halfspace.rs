//! Halfspace intersection by polar duality.
//!
//! With the interior point `c` moved to the origin, the halfspace
//! `a·x <= b` (slack `b - a·c > 0`) maps to the dual point `a / (b - a·c)`.
//! Facets of the dual hull are vertices of the intersection, and extreme dual
//! points are its non-redundant facets.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::region::{convex_hull, ConvexRegion};
use super::{Hyperplane, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::points::PointSet;

/// Intersection of the halfspaces `h.normal·x <= h.offset`.
///
/// `interior` must satisfy every halfspace with slack above `tol.eps_abs`.
pub fn halfspace_intersection(halfspaces: &[Hyperplane], interior: &[f64], tol: Tolerance) -> Result<ConvexRegion> {
    let dim = interior.len();
    let mut dual = Vec::with_capacity(halfspaces.len() * dim);
    for (i, h) in halfspaces.iter().enumerate() {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
        let slack = h.offset - dot(&h.normal, interior);
        if !(slack > tol.eps_abs) {
            return Err(Error::BadInteriorPoint { index: i, slack });
        }
        dual.extend(h.normal.iter().map(|a| a / slack));
    }
    if halfspaces.len() <= dim {
        return Err(Error::UnboundedRegion);
    }
    let dual = PointSet::new(dim, dual)?;
    let dual_region = convex_hull(&dual, tol).map_err(|e| match e {
        Error::DegenerateHull { .. } => Error::UnboundedRegion,
        other => other,
    })?;

    // The origin must be strictly inside the dual hull.
    let origin_margin = tol.scaled(dual.scale());
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for f in dual_region.facets() {
        if !(f.offset > origin_margin) {
            return Err(Error::UnboundedRegion);
        }
        let v: Vec<f64> = f.normal.iter().zip(interior).map(|(m, c)| c + m / f.offset).collect();
        let scale = v.iter().fold(1.0_f64, |s, c| s.max(c.abs()));
        let dup = vertices.iter().any(|w| w.iter().zip(&v).all(|(a, b)| (a - b).abs() <= tol.scaled(scale)));
        if !dup {
            vertices.push(v);
        }
    }
    let facets = dual_region.vertex_indices().unwrap_or_default().iter().map(|&i| halfspaces[i].clone()).collect();
    Ok(ConvexRegion::from_parts(dim, vertices, facets, None, dim))
}

/// A point with positive slack in every halfspace, preferring `preferred`.
///
/// Returns the point and its smallest slack (over unit-normal halfspaces).
/// When `preferred` fails the margin test, the point maximizing the minimum
/// slack is found by linear programming. `None` means no point clears
/// `min_margin`: the intersection is empty or has no interior.
pub fn find_interior_point(halfspaces: &[Hyperplane], preferred: &[f64], min_margin: f64) -> Option<(Vec<f64>, f64)> {
    let slack_at = |x: &[f64]| halfspaces.iter().map(|h| h.offset - dot(&h.normal, x)).fold(f64::INFINITY, f64::min);
    let s = slack_at(preferred);
    if s > min_margin {
        return Some((preferred.to_vec(), s));
    }
    let dim = preferred.len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    // Shift coordinates so the LP is posed around `preferred`.
    let xs: Vec<_> = (0..dim).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let radius_cap = 1e6 * (1.0 + preferred.iter().fold(0.0_f64, |m, c| m.max(c.abs())));
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, radius_cap));
    for h in halfspaces {
        let mut row: Vec<_> = xs.iter().zip(&h.normal).map(|(&v, &a)| (v, a)).collect();
        row.push((t, 1.0));
        lp.add_constraint(&row, ComparisonOp::Le, h.offset - dot(&h.normal, preferred));
    }
    let sol = lp.solve().ok()?;
    let x: Vec<f64> = preferred.iter().zip(&xs).map(|(c, &v)| c + sol[v]).collect();
    let s = slack_at(&x);
    (s > min_margin).then_some((x, s))
}

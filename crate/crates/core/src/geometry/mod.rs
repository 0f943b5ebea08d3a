//! Dimension-generic convex geometry: hyperplanes, hulls, halfspace
//! intersections, containment and volume.

mod halfspace;
mod hull;
mod region;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, norm};
use crate::points::PointSet;

pub use halfspace::{find_interior_point, halfspace_intersection};
pub use region::{boundary_point_indices, contains, convex_hull, convex_hull_any_rank, volume, ConvexRegion};

/// Absolute/relative tolerance pair used for every "on the plane" decision.
///
/// A point `x` is on the plane `n·x = b` when `|n·x - b| <= eps_abs + eps_rel·|b|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_abs: 1e-9, eps_rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        if !(eps_abs > 0.0 && eps_rel > 0.0 && eps_abs.is_finite() && eps_rel.is_finite()) {
            return Err(Error::Config(format!("tolerances must be positive, got abs={eps_abs}, rel={eps_rel}")));
        }
        Ok(Self { eps_abs, eps_rel })
    }

    /// Width of the "on" band around a plane with the given offset.
    pub fn band(&self, offset: f64) -> f64 {
        self.eps_abs + self.eps_rel * offset.abs()
    }

    /// Band used inside hull construction, where offsets depend on the
    /// coordinate origin: scaled by the data magnitude instead.
    pub(crate) fn scaled(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale
    }
}

/// The affine plane `{x : normal·x = offset}` with a unit normal.
///
/// When used as a facet or halfspace it denotes `normal·x <= offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    /// Normalizes `normal`; fails on a zero vector.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let len = norm(&normal);
        if !(len > 0.0) || !offset.is_finite() {
            return Err(Error::DegenerateSimplex);
        }
        Ok(Self { normal: normal.into_iter().map(|c| c / len).collect(), offset: offset / len })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal·x - offset`; positive above the plane.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    /// The same plane with the opposite orientation.
    pub fn flipped(&self) -> Hyperplane {
        Hyperplane { normal: self.normal.iter().map(|c| -c).collect(), offset: -self.offset }
    }

    /// Halfspace `normal·x <= offset` for `Side::Below`, the opposite one for
    /// `Side::Above`.
    pub fn halfspace(&self, side: Side) -> Hyperplane {
        match side {
            Side::Below => self.clone(),
            Side::Above => self.flipped(),
        }
    }
}

/// One of the two closed halfspaces bounded by a hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

/// Point counts on either side of a plane, on-plane points counted separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SideCounts {
    pub below: usize,
    pub on: usize,
    pub above: usize,
}

/// Hyperplane through exactly `p` points in `R^p`.
///
/// The normal is the generalized cross product of the edge vectors, so the
/// result depends only on the points. The first component of the normal whose
/// magnitude exceeds `1e-12` is made positive.
pub fn hyperplane_through(pts: &[&[f64]]) -> Result<Hyperplane> {
    let p = pts.len();
    if p < 2 || pts.iter().any(|x| x.len() != p) {
        let found = pts.first().map_or(0, |x| x.len());
        return Err(Error::DimensionMismatch { expected: p, found });
    }
    let base = pts[0];
    let edges: Vec<Vec<f64>> = pts[1..].iter().map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let normal = cross_product(&edges, p);
    let len = norm(&normal);
    let edge_scale: f64 = edges.iter().map(|e| norm(e)).product();
    if !(len > 1e-12 * edge_scale) || edge_scale == 0.0 {
        return Err(Error::DegenerateSimplex);
    }
    let mut normal: Vec<f64> = normal.into_iter().map(|c| c / len).collect();
    if let Some(first) = normal.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            normal.iter_mut().for_each(|c| *c = -*c);
        }
    }
    let offset = pts.iter().map(|x| dot(&normal, x)).sum::<f64>() / p as f64;
    Ok(Hyperplane { normal, offset })
}

/// Generalized cross product of `p - 1` vectors in `R^p`: the vector of signed
/// cofactors, orthogonal to every input.
pub(crate) fn cross_product(edges: &[Vec<f64>], p: usize) -> Vec<f64> {
    debug_assert_eq!(edges.len() + 1, p);
    match p {
        2 => vec![-edges[0][1], edges[0][0]],
        3 => {
            let (a, b) = (&edges[0], &edges[1]);
            vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
        }
        _ => {
            let m = p - 1;
            (0..p)
                .map(|col| {
                    let mut minor = Vec::with_capacity(m * m);
                    for e in edges {
                        minor.extend(e.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| *v));
                    }
                    let sign = if (col + m).is_multiple_of(2) { 1.0 } else { -1.0 };
                    sign * determinant(m, minor)
                })
                .collect()
        }
    }
}

pub fn side_counts(plane: &Hyperplane, points: &PointSet, tol: Tolerance) -> SideCounts {
    let band = tol.band(plane.offset);
    let mut counts = SideCounts::default();
    for x in points.iter() {
        let d = plane.signed_distance(x);
        if d > band {
            counts.above += 1;
        } else if d < -band {
            counts.below += 1;
        } else {
            counts.on += 1;
        }
    }
    counts
}

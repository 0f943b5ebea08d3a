use serde::{Deserialize, Serialize};

use super::hull::{affine_frame, quickhull, SimplicialHull};
use super::{Hyperplane, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, OrthoBasis};
use crate::points::PointSet;

/// Residual below which two facet normals count as parallel when deciding
/// whether a boundary point is a vertex.
const NORMAL_RANK_TOL: f64 = 1e-11;

/// A bounded convex polytope given by its extreme points and facet
/// inequalities `normal·x <= offset`.
///
/// Regions of lower affine rank (a segment or a single point in the plane,
/// say) are represented too: the missing directions are pinned by pairs of
/// opposite facets. An empty region has no vertices and contains nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Hyperplane>,
    /// Input indices of `vertices` when the region is the hull of a point set.
    vertex_indices: Option<Vec<usize>>,
    affine_rank: usize,
}

impl ConvexRegion {
    pub(crate) fn from_parts(
        dim: usize,
        vertices: Vec<Vec<f64>>,
        facets: Vec<Hyperplane>,
        vertex_indices: Option<Vec<usize>>,
        affine_rank: usize,
    ) -> Self {
        Self { dim, vertices, facets, vertex_indices, affine_rank }
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: Vec::new(), facets: Vec::new(), vertex_indices: None, affine_rank: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    pub fn vertex_indices(&self) -> Option<&[usize]> {
        self.vertex_indices.as_deref()
    }

    pub fn affine_rank(&self) -> usize {
        self.affine_rank
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.is_empty() && self.affine_rank == self.dim
    }

    pub fn contains(&self, x: &[f64], tol: Tolerance) -> bool {
        contains(self, x, tol)
    }

    pub fn volume(&self) -> f64 {
        volume(self)
    }

    pub fn vertex_centroid(&self) -> Vec<f64> {
        centroid(&self.vertices, self.dim)
    }

    /// Rewrites `vertex_indices` through `f`, e.g. from subset to input indices.
    pub(crate) fn with_vertex_indices<F: Fn(usize) -> usize>(mut self, f: F) -> Self {
        if let Some(idx) = self.vertex_indices.as_mut() {
            idx.iter_mut().for_each(|i| *i = f(*i));
        }
        self
    }

    /// Number of points of `points` inside the region.
    pub fn count_inside(&self, points: &PointSet, tol: Tolerance) -> usize {
        points.iter().filter(|x| self.contains(x, tol)).count()
    }
}

fn centroid(vertices: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let mut c = vec![0.0; dim];
    for v in vertices {
        c.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    if !vertices.is_empty() {
        c.iter_mut().for_each(|a| *a /= vertices.len() as f64);
    }
    c
}

/// Full-dimensional convex hull of `points`.
///
/// Fails with [`Error::DegenerateHull`] when the points do not span the space.
pub fn convex_hull(points: &PointSet, tol: Tolerance) -> Result<ConvexRegion> {
    let dim = points.dim();
    if points.len() < dim + 1 {
        let rank = affine_frame(points, tol.scaled(points.scale())).1.rank();
        return Err(Error::DegenerateHull { rank, dim });
    }
    let hull = quickhull(points, tol)?;
    Ok(assemble(points, &hull))
}

/// Merges coplanar simplicial facets and keeps only extreme vertices.
fn assemble(points: &PointSet, hull: &SimplicialHull) -> ConvexRegion {
    let dim = points.dim();
    let eps = hull.eps;
    let mut planes: Vec<Hyperplane> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for f in &hull.facets {
        let target = planes.iter().position(|pl| {
            dot(&pl.normal, &f.plane.normal) > 0.0
                && f.vertices.iter().all(|&v| pl.signed_distance(points.point(v)).abs() <= eps)
        });
        match target {
            Some(t) => members[t].extend_from_slice(&f.vertices),
            None => {
                planes.push(f.plane.clone());
                members.push(f.vertices.clone());
            }
        }
    }
    // Every member vertex must satisfy its own merged facet.
    for (pl, mem) in planes.iter_mut().zip(&members) {
        let top = mem.iter().map(|&v| dot(&pl.normal, points.point(v))).fold(pl.offset, f64::max);
        pl.offset = top;
    }

    let mut candidates: Vec<usize> = hull.facets.iter().flat_map(|f| f.vertices.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let vertex_indices: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| {
            let x = points.point(i);
            let mut basis = OrthoBasis::new(dim);
            for pl in &planes {
                if pl.signed_distance(x).abs() <= eps {
                    basis.try_push(&pl.normal, NORMAL_RANK_TOL);
                    if basis.rank() == dim {
                        return true;
                    }
                }
            }
            false
        })
        .collect();
    let vertices = vertex_indices.iter().map(|&i| points.point(i).to_vec()).collect();
    ConvexRegion::from_parts(dim, vertices, planes, Some(vertex_indices), dim)
}

/// Convex hull of any affine rank, including a single point or none at all.
///
/// Lower-rank hulls are computed inside their affine span and lifted back;
/// the orthogonal complement is pinned by pairs of opposite facets.
pub fn convex_hull_any_rank(points: &PointSet, tol: Tolerance) -> Result<ConvexRegion> {
    let dim = points.dim();
    if points.is_empty() {
        return Ok(ConvexRegion::empty(dim));
    }
    let eps = tol.scaled(points.scale());
    let (frame, basis) = affine_frame(points, eps);
    let rank = basis.rank();
    if rank == dim && points.len() > dim {
        return convex_hull(points, tol);
    }
    let origin = points.point(frame[0]).to_vec();
    let dirs = basis.vectors().to_vec();
    let project = |x: &[f64]| -> Vec<f64> {
        let d: Vec<f64> = x.iter().zip(&origin).map(|(a, b)| a - b).collect();
        dirs.iter().map(|u| dot(u, &d)).collect()
    };
    let lift_normal = |coef: &[f64]| -> Vec<f64> {
        let mut n = vec![0.0; dim];
        for (c, u) in coef.iter().zip(&dirs) {
            n.iter_mut().zip(u).for_each(|(a, b)| *a += c * b);
        }
        n
    };

    let (vertex_indices, mut facets): (Vec<usize>, Vec<Hyperplane>) = match rank {
        0 => (vec![frame[0]], Vec::new()),
        1 => {
            let t: Vec<f64> = points.iter().map(|x| project(x)[0]).collect();
            let lo = (0..t.len()).min_by(|&a, &b| t[a].total_cmp(&t[b]).then(a.cmp(&b))).expect("non-empty");
            let hi = (0..t.len()).max_by(|&a, &b| t[a].total_cmp(&t[b]).then(b.cmp(&a))).expect("non-empty");
            let u = &dirs[0];
            let neg: Vec<f64> = u.iter().map(|c| -c).collect();
            let mut idx = vec![lo, hi];
            idx.sort_unstable();
            (
                idx,
                vec![
                    Hyperplane { normal: u.clone(), offset: dot(u, points.point(hi)) },
                    Hyperplane { normal: neg.clone(), offset: dot(&neg, points.point(lo)) },
                ],
            )
        }
        r => {
            let sub = points.map_projected(r, &project);
            let region = convex_hull(&sub, tol)?;
            let facets = region
                .facets()
                .iter()
                .map(|f| {
                    let normal = lift_normal(&f.normal);
                    let offset = f.offset + dot(&normal, &origin);
                    Hyperplane { normal, offset }
                })
                .collect();
            (region.vertex_indices.unwrap_or_default(), facets)
        }
    };
    for w in basis.complement() {
        let level = dot(&w, &origin);
        facets.push(Hyperplane { normal: w.iter().map(|c| -c).collect(), offset: -level });
        facets.push(Hyperplane { normal: w, offset: level });
    }
    let vertices = vertex_indices.iter().map(|&i| points.point(i).to_vec()).collect();
    Ok(ConvexRegion::from_parts(dim, vertices, facets, Some(vertex_indices), rank))
}

impl PointSet {
    fn map_projected<F: Fn(&[f64]) -> Vec<f64>>(&self, dim: usize, f: &F) -> PointSet {
        let mut coords = Vec::with_capacity(self.len() * dim);
        for x in self.iter() {
            coords.extend(f(x));
        }
        PointSet::new(dim, coords).expect("projection of finite points is finite")
    }
}

/// Boundary points count as inside.
pub fn contains(region: &ConvexRegion, x: &[f64], tol: Tolerance) -> bool {
    !region.vertices.is_empty() && region.facets.iter().all(|f| f.signed_distance(x) <= tol.band(f.offset))
}

/// Lebesgue measure in `R^dim`; zero for lower-rank or empty regions.
///
/// The boundary is triangulated into simplices, each coned to the vertex
/// centroid.
pub fn volume(region: &ConvexRegion) -> f64 {
    let dim = region.dim;
    if !region.is_full_dimensional() || region.vertices.len() <= dim {
        return 0.0;
    }
    let verts = PointSet::from_rows(&region.vertices).expect("vertices share the region dimension");
    let Ok(hull) = quickhull(&verts, Tolerance::default()) else {
        return 0.0;
    };
    let c = centroid(&region.vertices, dim);
    let factorial: f64 = (1..=dim).map(|k| k as f64).product();
    let mut total = 0.0;
    let mut m = Vec::with_capacity(dim * dim);
    for f in &hull.facets {
        m.clear();
        for &v in &f.vertices {
            m.extend(verts.point(v).iter().zip(&c).map(|(a, b)| a - b));
        }
        total += determinant(dim, m.clone()).abs();
    }
    total / factorial
}

/// Indices of points that are inside `region` and lie on one of its facets.
pub fn boundary_point_indices(points: &PointSet, region: &ConvexRegion, tol: Tolerance) -> Vec<usize> {
    if region.is_empty() {
        return Vec::new();
    }
    points
        .iter()
        .enumerate()
        .filter(|(_, x)| {
            contains(region, x, tol) && region.facets.iter().any(|f| f.signed_distance(x).abs() <= tol.band(f.offset))
        })
        .map(|(i, _)| i)
        .collect()
}

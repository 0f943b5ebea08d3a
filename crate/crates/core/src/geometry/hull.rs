//! Quickhull in arbitrary dimension.
//!
//! Produces a simplicial boundary: every facet carries exactly `dim` vertex
//! indices. Coplanar facets are merged later, when a [`ConvexRegion`] is
//! assembled from the result.
//!
//! [`ConvexRegion`]: super::ConvexRegion

use std::collections::HashMap;

use super::{cross_product, Hyperplane, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, OrthoBasis};
use crate::points::PointSet;

#[derive(Debug, Clone)]
pub(crate) struct SimplexFacet {
    pub vertices: Vec<usize>,
    pub plane: Hyperplane,
}

#[derive(Debug, Clone)]
pub(crate) struct SimplicialHull {
    pub facets: Vec<SimplexFacet>,
    /// Distance threshold used for visibility decisions.
    pub eps: f64,
}

#[derive(Debug)]
struct Face {
    vertices: Vec<usize>,
    normal: Vec<f64>,
    offset: f64,
    /// `neighbors[i]` shares the ridge that omits `vertices[i]`.
    neighbors: Vec<usize>,
    outside: Vec<usize>,
    furthest: Option<(usize, f64)>,
    alive: bool,
}

impl Face {
    fn distance(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    fn push_outside(&mut self, idx: usize, dist: f64) {
        self.outside.push(idx);
        if self.furthest.is_none_or(|(_, d)| dist > d) {
            self.furthest = Some((idx, dist));
        }
    }
}

struct Builder<'a> {
    points: &'a PointSet,
    dim: usize,
    eps: f64,
    interior: Vec<f64>,
    faces: Vec<Face>,
}

/// Affine rank of `points` with respect to the hull tolerance, together with
/// the indices of a maximal affinely independent subset (greedy, farthest
/// point first).
pub(crate) fn affine_frame(points: &PointSet, eps: f64) -> (Vec<usize>, OrthoBasis) {
    let dim = points.dim();
    let mut basis = OrthoBasis::new(dim);
    if points.is_empty() {
        return (Vec::new(), basis);
    }
    let first = (0..points.len())
        .min_by(|&a, &b| points.point(a)[0].total_cmp(&points.point(b)[0]).then(a.cmp(&b)))
        .expect("non-empty");
    let origin = points.point(first);
    let mut chosen = vec![first];
    while basis.rank() < dim {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..points.len() {
            let diff: Vec<f64> = points.point(i).iter().zip(origin).map(|(a, b)| a - b).collect();
            let r = norm(&basis.residual(&diff));
            if best.is_none_or(|(_, d)| r > d) {
                best = Some((i, r));
            }
        }
        match best {
            Some((i, r)) if r > eps => {
                let diff: Vec<f64> = points.point(i).iter().zip(origin).map(|(a, b)| a - b).collect();
                basis.try_push(&diff, 0.0);
                chosen.push(i);
            }
            _ => break,
        }
    }
    (chosen, basis)
}

pub(crate) fn quickhull(points: &PointSet, tol: Tolerance) -> Result<SimplicialHull> {
    let dim = points.dim();
    let eps = tol.scaled(points.scale());
    let (simplex, basis) = affine_frame(points, eps);
    if basis.rank() < dim {
        return Err(Error::DegenerateHull { rank: basis.rank(), dim });
    }
    let mut interior = vec![0.0; dim];
    for &i in &simplex {
        interior.iter_mut().zip(points.point(i)).for_each(|(c, v)| *c += v);
    }
    interior.iter_mut().for_each(|c| *c /= simplex.len() as f64);

    let mut b = Builder { points, dim, eps, interior, faces: Vec::new() };
    b.init_simplex(&simplex)?;
    b.run()?;
    let facets = b
        .faces
        .into_iter()
        .filter(|f| f.alive)
        .map(|f| SimplexFacet { vertices: f.vertices, plane: Hyperplane { normal: f.normal, offset: f.offset } })
        .collect();
    Ok(SimplicialHull { facets, eps })
}

impl<'a> Builder<'a> {
    fn make_face(&self, vertices: Vec<usize>) -> Result<Face> {
        let base = self.points.point(vertices[0]);
        let edges: Vec<Vec<f64>> = vertices[1..]
            .iter()
            .map(|&v| self.points.point(v).iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let raw = cross_product(&edges, self.dim);
        let len = norm(&raw);
        if !(len > 0.0) {
            return Err(Error::Internal("zero-area facet during hull construction".into()));
        }
        let mut normal: Vec<f64> = raw.into_iter().map(|c| c / len).collect();
        let mut offset =
            vertices.iter().map(|&v| dot(&normal, self.points.point(v))).sum::<f64>() / vertices.len() as f64;
        if dot(&normal, &self.interior) > offset {
            normal.iter_mut().for_each(|c| *c = -*c);
            offset = -offset;
        }
        Ok(Face { vertices, normal, offset, neighbors: Vec::new(), outside: Vec::new(), furthest: None, alive: true })
    }

    fn init_simplex(&mut self, simplex: &[usize]) -> Result<()> {
        let d = self.dim;
        for omit in 0..=d {
            let verts: Vec<usize> = simplex.iter().enumerate().filter(|(j, _)| *j != omit).map(|(_, &v)| v).collect();
            let mut face = self.make_face(verts)?;
            // The vertex at position k of this face is simplex[j] for the j-th
            // index not equal to `omit`; the face across from it omits j.
            face.neighbors = (0..=d).filter(|&j| j != omit).collect();
            self.faces.push(face);
        }
        let in_simplex = |i: usize| simplex.contains(&i);
        for i in 0..self.points.len() {
            if in_simplex(i) {
                continue;
            }
            let x = self.points.point(i);
            for f in self.faces.iter_mut() {
                let dist = f.distance(x);
                if dist > self.eps {
                    f.push_outside(i, dist);
                    break;
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let mut work: Vec<usize> = (0..self.faces.len()).rev().collect();
        while let Some(fi) = work.pop() {
            if !self.faces[fi].alive {
                continue;
            }
            let Some((eye, _)) = self.faces[fi].furthest else { continue };
            let new_faces = self.add_point(fi, eye)?;
            for &nf in new_faces.iter().rev() {
                if self.faces[nf].furthest.is_some() {
                    work.push(nf);
                }
            }
        }
        Ok(())
    }

    fn add_point(&mut self, start: usize, eye: usize) -> Result<Vec<usize>> {
        let eye_pt = self.points.point(eye);
        let mut visible = vec![start];
        let mut is_visible: HashMap<usize, bool> = HashMap::new();
        is_visible.insert(start, true);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for k in 0..self.dim {
                let g = self.faces[f].neighbors[k];
                if is_visible.contains_key(&g) {
                    continue;
                }
                let vis = self.faces[g].distance(eye_pt) > self.eps;
                is_visible.insert(g, vis);
                if vis {
                    visible.push(g);
                    stack.push(g);
                }
            }
        }

        // Horizon ridges, in a deterministic order.
        let mut new_faces = Vec::new();
        let mut ridge_map: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for &v in &visible {
            for k in 0..self.dim {
                let g = self.faces[v].neighbors[k];
                if is_visible[&g] {
                    continue;
                }
                let mut verts: Vec<usize> =
                    self.faces[v].vertices.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect();
                verts.push(eye);
                let mut face = self.make_face(verts)?;
                let id = self.faces.len();
                face.neighbors = vec![usize::MAX; self.dim];
                face.neighbors[self.dim - 1] = g;
                // Point g back at the new face across the shared ridge.
                let ridge = &face.vertices[..self.dim - 1];
                let gpos = self.faces[g]
                    .vertices
                    .iter()
                    .position(|x| !ridge.contains(x))
                    .ok_or_else(|| Error::Internal("horizon neighbor shares all vertices".into()))?;
                self.faces[g].neighbors[gpos] = id;
                // Link new faces to each other through sub-ridges containing the eye.
                for j in 0..self.dim - 1 {
                    let mut key: Vec<usize> =
                        face.vertices.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, &x)| x).collect();
                    key.sort_unstable();
                    if let Some((other, opos)) = ridge_map.remove(&key) {
                        face.neighbors[j] = other;
                        self.faces[other].neighbors[opos] = id;
                    } else {
                        ridge_map.insert(key, (id, j));
                    }
                }
                self.faces.push(face);
                new_faces.push(id);
            }
        }
        if !ridge_map.is_empty() {
            return Err(Error::Internal("unmatched ridge while adding hull point".into()));
        }

        let mut orphans = Vec::new();
        for &v in &visible {
            let face = &mut self.faces[v];
            face.alive = false;
            face.furthest = None;
            orphans.append(&mut face.outside);
        }
        for idx in orphans {
            if idx == eye {
                continue;
            }
            let x = self.points.point(idx);
            for &nf in &new_faces {
                let dist = self.faces[nf].distance(x);
                if dist > self.eps {
                    self.faces[nf].push_outside(idx, dist);
                    break;
                }
            }
        }
        Ok(new_faces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_center() {
        let pts = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]).unwrap();
        let h = quickhull(&pts, Tolerance::default()).unwrap();
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            assert!(!f.vertices.contains(&4));
            for x in pts.iter() {
                assert!(f.plane.signed_distance(x) <= 1e-12);
            }
        }
    }

    #[test]
    fn collinear_is_rank_one() {
        let pts = PointSet::from_rows(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).unwrap();
        assert_eq!(quickhull(&pts, Tolerance::default()).unwrap_err(), Error::DegenerateHull { rank: 1, dim: 2 });
    }

    #[test]
    fn neighbor_links_are_symmetric() {
        let mut coords = Vec::new();
        let mut s = 12345_u64;
        for _ in 0..300 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            coords.push(((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5);
        }
        let pts = PointSet::new(3, coords).unwrap();
        let mut b = Builder { points: &pts, dim: 3, eps: 1e-12, interior: vec![0.0; 3], faces: Vec::new() };
        let (simplex, _) = affine_frame(&pts, 1e-12);
        let mut c = vec![0.0; 3];
        for &i in &simplex {
            c.iter_mut().zip(pts.point(i)).for_each(|(a, v)| *a += v / 4.0);
        }
        b.interior = c;
        b.init_simplex(&simplex).unwrap();
        b.run().unwrap();
        for (i, f) in b.faces.iter().enumerate().filter(|(_, f)| f.alive) {
            for &g in &f.neighbors {
                assert!(b.faces[g].alive);
                assert!(b.faces[g].neighbors.contains(&i));
            }
        }
    }
}

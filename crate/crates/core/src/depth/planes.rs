//! Hyperplanes through `p` active points, indexed by their minority count.
//!
//! This is the O(n^(p+1)) part of halfspace peeling. The combination range is
//! split by its first element across workers; chunks are concatenated in
//! order, so the output is identical to a serial scan.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hyperplane_through, Hyperplane, Side, Tolerance};
use crate::linalg::dot;
use crate::par;
use crate::points::PointSet;

/// Which closed side(s) of a plane hold the larger number of active points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Majority {
    Below,
    Above,
    /// Equal counts: both closed halfspaces qualify.
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedHyperplane {
    pub plane: Hyperplane,
    /// `min(below, above)` over active points, on-plane points excluded.
    pub index: usize,
    pub majority: Majority,
    /// Input indices of the `p` points defining the plane.
    pub support: Vec<usize>,
}

impl IndexedHyperplane {
    /// The closed majority halfspace(s) as `normal·x <= offset` constraints.
    pub fn majority_halfspaces(&self) -> Vec<Hyperplane> {
        match self.majority {
            Majority::Below => vec![self.plane.halfspace(Side::Below)],
            Majority::Above => vec![self.plane.halfspace(Side::Above)],
            Majority::Both => vec![self.plane.halfspace(Side::Below), self.plane.halfspace(Side::Above)],
        }
    }
}

/// Every hyperplane through an affinely independent `p`-subset of `active`,
/// in lexicographic order of the subsets (positions within `active`).
pub fn enumerate_indexed_hyperplanes(
    points: &PointSet,
    active: &[usize],
    tol: Tolerance,
) -> Result<Vec<IndexedHyperplane>> {
    let p = points.dim();
    if active.len() < p {
        return Err(Error::InsufficientPoints { available: active.len(), required: p });
    }
    let scan = Scan::new(points, active, tol);
    let chunks = par::map_range(active.len(), |first| {
        let mut out = Vec::new();
        scan.for_each_with_first(first, |h| out.push(h));
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// The smallest index `>= min_index` that occurs, with all planes carrying it.
pub(crate) fn planes_at_or_above(
    points: &PointSet,
    active: &[usize],
    min_index: usize,
    tol: Tolerance,
) -> (Option<usize>, Vec<IndexedHyperplane>) {
    if active.len() < points.dim() {
        return (None, Vec::new());
    }
    let scan = Scan::new(points, active, tol);
    let chunks = par::map_range(active.len(), |first| {
        let mut best: Option<usize> = None;
        let mut out = Vec::new();
        scan.for_each_with_first(first, |h| {
            if h.index < min_index {
                return;
            }
            match best {
                Some(b) if h.index > b => {}
                Some(b) if h.index == b => out.push(h),
                _ => {
                    best = Some(h.index);
                    out.clear();
                    out.push(h);
                }
            }
        });
        (best, out)
    });
    let level = chunks.iter().filter_map(|(b, _)| *b).min();
    let planes = match level {
        Some(l) => chunks.into_iter().filter(|(b, _)| *b == Some(l)).flat_map(|(_, v)| v).collect(),
        None => Vec::new(),
    };
    (level, planes)
}

struct Scan<'a> {
    points: &'a PointSet,
    active: &'a [usize],
    local: PointSet,
    tol: Tolerance,
}

impl<'a> Scan<'a> {
    fn new(points: &'a PointSet, active: &'a [usize], tol: Tolerance) -> Self {
        Self { points, active, local: points.select(active), tol }
    }

    /// Visits every combination whose first position is `first`.
    fn for_each_with_first<F: FnMut(IndexedHyperplane)>(&self, first: usize, mut visit: F) {
        let p = self.points.dim();
        let m = self.active.len();
        if first + p > m {
            return;
        }
        // combo[0] = first; the rest run over (p-1)-subsets of first+1..m.
        let mut combo: Vec<usize> = (0..p).map(|j| first + j).collect();
        loop {
            if let Some(h) = self.indexed(&combo) {
                visit(h);
            }
            // Advance the tail lexicographically.
            let mut j = p - 1;
            loop {
                if j == 0 {
                    return;
                }
                if combo[j] < m - (p - j) {
                    combo[j] += 1;
                    for t in j + 1..p {
                        combo[t] = combo[t - 1] + 1;
                    }
                    break;
                }
                j -= 1;
            }
        }
    }

    fn indexed(&self, combo: &[usize]) -> Option<IndexedHyperplane> {
        let refs: Vec<&[f64]> = combo.iter().map(|&c| self.local.point(c)).collect();
        let plane = hyperplane_through(&refs).ok()?;
        let band = self.tol.band(plane.offset);
        let (mut below, mut above) = (0usize, 0usize);
        for x in self.local.iter() {
            let d = dot(&plane.normal, x) - plane.offset;
            if d > band {
                above += 1;
            } else if d < -band {
                below += 1;
            }
        }
        let majority = match below.cmp(&above) {
            std::cmp::Ordering::Greater => Majority::Below,
            std::cmp::Ordering::Less => Majority::Above,
            std::cmp::Ordering::Equal => Majority::Both,
        };
        Some(IndexedHyperplane {
            plane,
            index: below.min(above),
            majority,
            support: combo.iter().map(|&c| self.active[c]).collect(),
        })
    }
}

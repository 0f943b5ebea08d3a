//! Region construction: halfspace-depth peeling, direct hull peeling and the
//! Mahalanobis benchmark region.

mod direct;
mod halfspace;
mod mahal;
mod planes;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexRegion;

pub use direct::direct_peel;
pub use halfspace::{halfspace_peel, halfspace_peel_with, PlaneIndexing};
pub use mahal::{mahal_region, rounded_count};
pub use planes::{enumerate_indexed_hyperplanes, IndexedHyperplane, Majority};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mahal,
    Direct,
    Halfspace,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Mahal, Algorithm::Direct, Algorithm::Halfspace];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mahal => "mahal",
            Algorithm::Direct => "direct",
            Algorithm::Halfspace => "halfspace",
        }
    }

    pub fn run(self, points: &crate::PointSet, alpha: f64, tol: crate::Tolerance) -> Result<PeelResult> {
        match self {
            Algorithm::Mahal => mahal_region(points, alpha, tol),
            Algorithm::Direct => direct_peel(points, alpha, tol),
            Algorithm::Halfspace => halfspace_peel(points, alpha, tol),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mahal" => Ok(Algorithm::Mahal),
            "direct" => Ok(Algorithm::Direct),
            "halfspace" => Ok(Algorithm::Halfspace),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// Why a peeling loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// A region fell below the requested coverage.
    Threshold,
    /// The active set became too small to continue before the threshold.
    InsufficientPoints,
    /// No hyperplane with the next depth index exists.
    Exhausted,
}

/// One level of a peeling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Peel {
    /// Depth index for halfspace peeling, iteration number otherwise.
    pub k: usize,
    pub region: ConvexRegion,
    /// Points of the full input inside `region`.
    pub points_inside: usize,
    pub alpha_hat: f64,
    /// Input indices active when the region was built (the selected points
    /// for the Mahalanobis region).
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelResult {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub n: usize,
    pub peels: Vec<Peel>,
    /// Index into `peels` of the output region.
    pub chosen: usize,
    /// Depth indices that had no hyperplanes and were skipped.
    pub skipped_k: Vec<usize>,
    pub termination: Termination,
}

impl PeelResult {
    pub fn chosen_peel(&self) -> &Peel {
        &self.peels[self.chosen]
    }

    pub fn region(&self) -> &ConvexRegion {
        &self.chosen_peel().region
    }

    pub fn alpha_hat(&self) -> f64 {
        self.chosen_peel().alpha_hat
    }

    pub fn points_inside(&self) -> usize {
        self.chosen_peel().points_inside
    }
}

/// Index of the candidate whose realized alpha is closest to `alpha`.
/// Ties go to the later (deeper) candidate.
pub fn select_output_hull(alpha_hats: &[f64], alpha: f64) -> Result<usize> {
    if alpha_hats.is_empty() {
        return Err(Error::Internal("no candidate regions to choose from".into()));
    }
    let mut best = 0;
    for (i, a) in alpha_hats.iter().enumerate().skip(1) {
        let gap = (a - alpha).abs();
        let best_gap = (alpha_hats[best] - alpha).abs();
        if gap <= best_gap + 1e-12 {
            best = i;
        }
    }
    Ok(best)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

pub(crate) fn make_peel(
    k: usize,
    region: ConvexRegion,
    points: &crate::PointSet,
    active: Vec<usize>,
    tol: crate::Tolerance,
) -> Peel {
    let points_inside = region.count_inside(points, tol);
    Peel { k, region, points_inside, alpha_hat: 1.0 - points_inside as f64 / points.len() as f64, active }
}

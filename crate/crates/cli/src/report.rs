use morderstats::{Hyperplane, PeelResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl From<&Hyperplane> for Facet {
    fn from(h: &Hyperplane) -> Self {
        Facet { normal: h.normal.clone(), offset: h.offset }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelReport {
    pub k: usize,
    pub points_inside: usize,
    pub alpha_hat: f64,
    pub volume: f64,
    pub active: usize,
    pub vertices: Vec<Vec<f64>>,
}

/// The chosen region (facets as `normal·x <= offset`) and the full peel
/// history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub algorithm: String,
    pub alpha: f64,
    pub alpha_hat: f64,
    pub n: usize,
    pub p: usize,
    pub points_inside: usize,
    pub volume: f64,
    pub chosen: usize,
    pub termination: String,
    pub skipped_k: Vec<usize>,
    pub vertices: Vec<Vec<f64>>,
    pub facets: Vec<Facet>,
    pub peels: Vec<PeelReport>,
}

impl RegionReport {
    pub fn new(result: &PeelResult, p: usize) -> Self {
        let region = result.region();
        RegionReport {
            algorithm: result.algorithm.name().to_string(),
            alpha: result.alpha,
            alpha_hat: result.alpha_hat(),
            n: result.n,
            p,
            points_inside: result.points_inside(),
            volume: region.volume(),
            chosen: result.chosen,
            termination: serde_json::to_value(result.termination)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            skipped_k: result.skipped_k.clone(),
            vertices: region.vertices().to_vec(),
            facets: region.facets().iter().map(Facet::from).collect(),
            peels: result
                .peels
                .iter()
                .map(|peel| PeelReport {
                    k: peel.k,
                    points_inside: peel.points_inside,
                    alpha_hat: peel.alpha_hat,
                    volume: peel.region.volume(),
                    active: peel.active.len(),
                    vertices: peel.region.vertices().to_vec(),
                })
                .collect(),
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: alpha {} -> alpha_hat {:.6} ({} of {} points inside), {} vertices, volume {:.6}, {} peels",
            self.algorithm,
            self.alpha,
            self.alpha_hat,
            self.points_inside,
            self.n,
            self.vertices.len(),
            self.volume,
            self.peels.len()
        )
    }
}

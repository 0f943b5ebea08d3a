use morderstats::experiments::{CellStatus, ExperimentConfig, ExperimentSummary};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellEntry {
    pub algorithm: String,
    pub alpha: f64,
    pub cov: String,
    pub n: usize,
    pub p: usize,
    #[serde(flatten)]
    pub status: CellStatus,
}

/// Written next to every experiment's tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub software: String,
    pub version: String,
    pub seed: u64,
    pub started: String,
    pub finished: String,
    pub parallel_workers: Option<usize>,
    pub files: Vec<String>,
    pub conventions: Vec<String>,
    pub config: ExperimentConfig,
    pub cells: Vec<CellEntry>,
}

impl RunManifest {
    pub fn new(summary: &ExperimentSummary, started: String, finished: String, files: Vec<String>) -> Self {
        RunManifest {
            software: "morderstats".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: summary.config.seed,
            started,
            finished,
            parallel_workers: summary.config.workers,
            files,
            conventions: vec![
                "sigma columns are population standard deviations".into(),
                "error_mu and error_sigma pool every replicate x test-set error".into(),
                "error_min and error_max are the extremes of individual replicate x test-set errors".into(),
                "alpha_hat, too_many, too_few and volume statistics are across replicates; too_many and too_few as rates per test set".into(),
                "construction_seconds is wall-clock construction time summed over replicates".into(),
            ],
            config: summary.config.clone(),
            cells: summary
                .cells
                .iter()
                .map(|c| CellEntry {
                    algorithm: c.algorithm.name().into(),
                    alpha: c.alpha,
                    cov: c.cov.name().into(),
                    n: c.n,
                    p: c.p,
                    status: c.status.clone(),
                })
                .collect(),
        }
    }
}

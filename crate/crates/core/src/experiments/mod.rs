//! The simulation protocol: seeded Gaussian training and test sets under
//! fixed covariance structures, coverage error and volume per region, and
//! per-cell summaries over replicates.

mod data;
mod eval;
mod harness;
mod rng;

pub use data::{make_dataset, matrix_a, matrix_b, sample_mvn, CovarianceKind, CovarianceSpec};
pub use eval::{evaluate_region, Evaluation};
pub use harness::{
    mean_sd, run_experiment, test_sets, CellStats, CellStatus, CellSummary, ExperimentConfig, ExperimentSummary,
    ReplicateRecord, DEFAULT_SEED,
};
pub use rng::{dataset_rng, stream_id, Role};

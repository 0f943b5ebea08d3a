use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::data::{make_dataset, CovarianceKind, CovarianceSpec};
use super::eval::evaluate_region;
use super::rng::Role;
use crate::depth::Algorithm;
use crate::error::{Error, Result};
use crate::geometry::Tolerance;
use crate::par;
use crate::points::PointSet;

pub const DEFAULT_SEED: u64 = 20_170_101;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: usize,
    pub alphas: Vec<f64>,
    pub cov: CovarianceKind,
    pub replicates: usize,
    pub test_sets: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub tol: Tolerance,
    /// Worker threads for replicates and plane enumeration. `Some(1)` runs
    /// everything on the calling thread; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    /// All three algorithms at alpha 0.1, 0.5 and 0.9 with 10 replicates of
    /// 100 test sets, run serially.
    pub fn new(n: usize, p: usize, cov: CovarianceKind) -> Self {
        Self {
            n,
            p,
            alphas: vec![0.9, 0.5, 0.1],
            cov,
            replicates: 10,
            test_sets: 100,
            seed: DEFAULT_SEED,
            algorithms: Algorithm::ALL.to_vec(),
            tol: Tolerance::default(),
            workers: Some(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        CovarianceSpec::new(self.cov, self.p)?;
        let bad = |msg: String| Err(Error::Config(msg));
        if self.replicates == 0 || self.test_sets == 0 {
            return bad("replicates and test sets must be at least 1".into());
        }
        if self.alphas.is_empty() || self.algorithms.is_empty() {
            return bad("at least one alpha and one algorithm are required".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return bad(format!("alpha must lie in (0, 1), got {a}"));
        }
        if self.n < self.p + 1 {
            return bad(format!("n = {} is too small for p = {}", self.n, self.p));
        }
        if self.cov == CovarianceKind::MixAB && !self.n.is_multiple_of(2) {
            return bad(format!("the A/B mixture needs an even n, got {}", self.n));
        }
        Ok(())
    }

    fn spec(&self) -> CovarianceSpec {
        CovarianceSpec { kind: self.cov, p: self.p }
    }
}

/// One replicate of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub replicate: usize,
    pub alpha_hat: f64,
    pub points_inside: usize,
    pub volume: f64,
    /// Wall-clock construction time; excluded from equality-based checks.
    pub seconds: f64,
    pub errors: Vec<f64>,
    pub too_many: usize,
    pub too_few: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum CellStatus {
    Ok,
    Failed(String),
}

/// Aggregates over one cell.
///
/// Error statistics pool every replicate×test error; `error_min`/`error_max`
/// are the extremes of those individual errors. The alpha-hat, too-many,
/// too-few and volume statistics are taken across replicates, too-many and
/// too-few as per-replicate rates. All standard deviations are population
/// standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub error_mu: f64,
    pub error_sigma: f64,
    pub error_min: f64,
    pub error_max: f64,
    pub alpha_hat_mu: f64,
    pub alpha_hat_sigma: f64,
    pub too_many_mu: f64,
    pub too_many_sigma: f64,
    pub too_few_mu: f64,
    pub too_few_sigma: f64,
    pub volume_mu: f64,
    pub volume_sigma: f64,
    /// Summed over replicates.
    pub construction_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub cov: CovarianceKind,
    pub n: usize,
    pub p: usize,
    pub status: CellStatus,
    pub stats: Option<CellStats>,
    pub records: Vec<ReplicateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    /// Algorithms outermost, then alphas, both in configuration order.
    pub cells: Vec<CellSummary>,
}

impl ExperimentSummary {
    pub fn cell(&self, algorithm: Algorithm, alpha: f64) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.alpha == alpha)
    }

    pub fn all_failed(&self) -> bool {
        self.cells.iter().all(|c| c.status != CellStatus::Ok)
    }
}

/// Runs every (algorithm, alpha) cell over all replicates.
///
/// Replicates may run concurrently; each draws from its own random streams,
/// so the summary does not depend on scheduling. An algorithm failure marks
/// its cell as failed without stopping the others.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    config.validate()?;
    let cells: Vec<(Algorithm, f64)> =
        config.algorithms.iter().flat_map(|&a| config.alphas.iter().map(move |&alpha| (a, alpha))).collect();

    let per_replicate =
        par::with_workers(config.workers, || par::map_range(config.replicates, |r| run_replicate(config, &cells, r)));
    let mut outcomes: Vec<Vec<Result<ReplicateRecord>>> = vec![Vec::new(); cells.len()];
    for rep in per_replicate {
        for (slot, outcome) in outcomes.iter_mut().zip(rep?) {
            slot.push(outcome);
        }
    }

    let cells = cells
        .into_iter()
        .zip(outcomes)
        .map(|((algorithm, alpha), outcome)| {
            let mut summary = CellSummary {
                algorithm,
                alpha,
                cov: config.cov,
                n: config.n,
                p: config.p,
                status: CellStatus::Ok,
                stats: None,
                records: Vec::new(),
            };
            match outcome.into_iter().collect::<Result<Vec<_>>>() {
                Ok(records) => {
                    summary.stats = Some(aggregate(&records, config.test_sets));
                    summary.records = records;
                }
                Err(e) => summary.status = CellStatus::Failed(e.to_string()),
            }
            summary
        })
        .collect();
    Ok(ExperimentSummary { config: config.clone(), cells })
}

fn run_replicate(
    config: &ExperimentConfig,
    cells: &[(Algorithm, f64)],
    replicate: usize,
) -> Result<Vec<Result<ReplicateRecord>>> {
    let spec = config.spec();
    let train = make_dataset(spec, config.n, replicate, Role::Train, config.seed)?;
    let tests = test_sets(config, replicate)?;
    Ok(cells
        .iter()
        .map(|&(algorithm, alpha)| {
            let start = Instant::now();
            let result = algorithm.run(&train, alpha, config.tol)?;
            let seconds = start.elapsed().as_secs_f64();
            let eval = evaluate_region(result.region(), result.alpha_hat(), &tests, config.tol);
            Ok(ReplicateRecord {
                replicate,
                alpha_hat: result.alpha_hat(),
                points_inside: result.points_inside(),
                volume: result.region().volume(),
                seconds,
                errors: eval.errors,
                too_many: eval.too_many,
                too_few: eval.too_few,
            })
        })
        .collect())
}

/// The test sets of one replicate, in order.
pub fn test_sets(config: &ExperimentConfig, replicate: usize) -> Result<Vec<PointSet>> {
    (0..config.test_sets)
        .map(|j| make_dataset(config.spec(), config.n, replicate, Role::Test(j), config.seed))
        .collect()
}

/// Mean and population standard deviation.
///
/// Computed on deviations from the first value, so a constant sample has a
/// standard deviation of exactly zero.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let Some(&x0) = xs.first() else {
        return (f64::NAN, f64::NAN);
    };
    let n = xs.len() as f64;
    let shift = xs.iter().map(|x| x - x0).sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - x0 - shift).powi(2)).sum::<f64>() / n;
    (x0 + shift, var.sqrt())
}

fn aggregate(records: &[ReplicateRecord], test_sets: usize) -> CellStats {
    let errors: Vec<f64> = records.iter().flat_map(|r| r.errors.iter().copied()).collect();
    let (error_mu, error_sigma) = mean_sd(&errors);
    let over = |f: &dyn Fn(&ReplicateRecord) -> f64| mean_sd(&records.iter().map(f).collect::<Vec<_>>());
    let (alpha_hat_mu, alpha_hat_sigma) = over(&|r| r.alpha_hat);
    let (too_many_mu, too_many_sigma) = over(&|r| r.too_many as f64 / test_sets as f64);
    let (too_few_mu, too_few_sigma) = over(&|r| r.too_few as f64 / test_sets as f64);
    let (volume_mu, volume_sigma) = over(&|r| r.volume);
    CellStats {
        error_mu,
        error_sigma,
        error_min: errors.iter().copied().fold(f64::INFINITY, f64::min),
        error_max: errors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        alpha_hat_mu,
        alpha_hat_sigma,
        too_many_mu,
        too_many_sigma,
        too_few_mu,
        too_few_sigma,
        volume_mu,
        volume_sigma,
        construction_seconds: records.iter().map(|r| r.seconds).sum(),
    }
}

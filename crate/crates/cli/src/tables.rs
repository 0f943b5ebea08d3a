//! summary.csv, runtime.csv and the optional dataset dump.

use std::io::Write;

use morderstats::experiments::{make_dataset, test_sets, CovarianceSpec, ExperimentConfig, ExperimentSummary, Role};

use crate::error::{CliError, Result};

pub const SUMMARY_COLUMNS: [&str; 18] = [
    "algorithm",
    "alpha",
    "cov",
    "n",
    "p",
    "error_mu",
    "error_sigma",
    "error_min",
    "error_max",
    "alpha_hat_mu",
    "alpha_hat_sigma",
    "too_many_mu",
    "too_many_sigma",
    "too_few_mu",
    "too_few_sigma",
    "volume_mu",
    "volume_sigma",
    "construction_seconds",
];

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Output(e.to_string())
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

/// One row per cell; metric fields of failed cells are left empty.
pub fn write_summary<W: Write>(w: W, summary: &ExperimentSummary) -> Result<()> {
    let mut w = writer(w);
    w.write_record(SUMMARY_COLUMNS).map_err(csv_err)?;
    for cell in &summary.cells {
        let mut row = vec![
            cell.algorithm.name().to_string(),
            cell.alpha.to_string(),
            cell.cov.name().to_string(),
            cell.n.to_string(),
            cell.p.to_string(),
        ];
        match &cell.stats {
            Some(s) => row.extend(
                [
                    s.error_mu,
                    s.error_sigma,
                    s.error_min,
                    s.error_max,
                    s.alpha_hat_mu,
                    s.alpha_hat_sigma,
                    s.too_many_mu,
                    s.too_many_sigma,
                    s.too_few_mu,
                    s.too_few_sigma,
                    s.volume_mu,
                    s.volume_sigma,
                    s.construction_seconds,
                ]
                .map(fixed),
            ),
            None => row.extend(std::iter::repeat_n(String::new(), SUMMARY_COLUMNS.len() - 5)),
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

/// Total construction seconds per algorithm and alpha, laid out as a single
/// (p, n, cov) row with one column per algorithm/alpha pair.
pub fn write_runtime<W: Write>(w: W, summary: &ExperimentSummary) -> Result<()> {
    let mut w = writer(w);
    let mut header = vec!["p".to_string(), "n".to_string(), "cov".to_string()];
    let mut row =
        vec![summary.config.p.to_string(), summary.config.n.to_string(), summary.config.cov.name().to_string()];
    for cell in &summary.cells {
        header.push(format!("{}_{}", cell.algorithm.name(), cell.alpha));
        row.push(cell.stats.as_ref().map(|s| fixed(s.construction_seconds)).unwrap_or_default());
    }
    w.write_record(&header).map_err(csv_err)?;
    w.write_record(&row).map_err(csv_err)?;
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

/// Every training and test set of the run, regenerated from the seed:
/// columns `replicate, set, point, x1..xp` with `set` = `train` or `test_j`.
pub fn write_datasets<W: Write>(w: W, config: &ExperimentConfig) -> Result<()> {
    let mut w = writer(w);
    let mut header = vec!["replicate".to_string(), "set".to_string(), "point".to_string()];
    header.extend((1..=config.p).map(|d| format!("x{d}")));
    w.write_record(&header).map_err(csv_err)?;
    let spec = CovarianceSpec::new(config.cov, config.p)?;
    for r in 0..config.replicates {
        let train = make_dataset(spec, config.n, r, Role::Train, config.seed)?;
        let tests = test_sets(config, r)?;
        let sets = std::iter::once(("train".to_string(), &train))
            .chain(tests.iter().enumerate().map(|(j, t)| (format!("test_{j}"), t)));
        for (name, set) in sets {
            for (i, x) in set.iter().enumerate() {
                let mut rec = vec![r.to_string(), name.clone(), i.to_string()];
                rec.extend(x.iter().map(|v| v.to_string()));
                w.write_record(&rec).map_err(csv_err)?;
            }
        }
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use morderstats::experiments::{run_experiment, CovarianceKind, ExperimentConfig, DEFAULT_SEED};
use morderstats::{Algorithm, Tolerance};

use crate::error::{CliError, Result};
use crate::input::read_points;
use crate::manifest::RunManifest;
use crate::report::RegionReport;
use crate::svg;
use crate::tables::{write_datasets, write_runtime, write_summary};

#[derive(Debug, Parser)]
#[command(name = "morderstats", version, about = "Convex order-statistic regions for multivariate data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a region from CSV data.
    Region(RegionArgs),
    /// Run the simulation protocol and write summary tables.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// CSV with one point per row; a non-numeric first row is a header.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "halfspace")]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub alpha: f64,
    /// Where to write the region JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute and relative geometric tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Peel diagram (planar data only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Print the region JSON on stdout instead of a one-line summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// A, B or mix.
    #[arg(long, default_value = "A")]
    pub cov: CovarianceKind,
    /// Repeat for several levels; defaults to 0.9, 0.5 and 0.1.
    #[arg(long = "alpha")]
    pub alphas: Vec<f64>,
    /// Comma-separated subset of mahal, direct, halfspace.
    #[arg(long, value_delimiter = ',', default_value = "mahal,direct,halfspace")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 10)]
    pub replicates: usize,
    #[arg(long, default_value_t = 100)]
    pub tests: usize,
    #[arg(long, env = "MORDERSTATS_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Run replicates on this many worker threads.
    #[arg(long, value_name = "WORKERS", conflicts_with = "runtime_table")]
    pub parallel: Option<usize>,
    /// Also write runtime.csv; timings are taken serially.
    #[arg(long)]
    pub runtime_table: bool,
    /// Also write every training and test set to datasets.csv.
    #[arg(long)]
    pub dump: bool,
    #[arg(long)]
    pub tol: Option<f64>,
}

fn tolerance(tol: Option<f64>) -> Result<Tolerance> {
    match tol {
        None => Ok(Tolerance::default()),
        Some(t) => Tolerance::new(t, t).map_err(|e| CliError::Usage(e.to_string())),
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Region(args) => region(args),
        Command::Experiment(args) => experiment(args),
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).map_err(CliError::io(path))
}

pub fn region(args: RegionArgs) -> Result<()> {
    let tol = tolerance(args.tol)?;
    let points = read_points(&args.input)?;
    if args.svg.is_some() && points.dim() != 2 {
        return Err(CliError::Usage(format!("--svg needs planar data, input has dimension {}", points.dim())));
    }
    let result = args.algorithm.run(&points, args.alpha, tol)?;
    let report = RegionReport::new(&result, points.dim());
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Output(e.to_string()))?;
    if let Some(out) = &args.out {
        write_file(out, format!("{json}\n"))?;
    }
    if let Some(path) = &args.svg {
        write_file(path, svg::render(&points, &result))?;
    }
    if args.json {
        println!("{json}");
    } else {
        println!("{}", report.summary_line());
    }
    Ok(())
}

pub fn experiment(args: ExperimentArgs) -> Result<()> {
    let mut config = ExperimentConfig::new(args.n, args.p, args.cov);
    if !args.alphas.is_empty() {
        config.alphas = args.alphas;
    }
    config.algorithms = args.algorithms;
    config.replicates = args.replicates;
    config.test_sets = args.tests;
    config.seed = args.seed;
    config.tol = tolerance(args.tol)?;
    config.workers = Some(args.parallel.unwrap_or(1).max(1));
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    fs::create_dir_all(&args.out_dir).map_err(CliError::io(&args.out_dir))?;
    let started = chrono::Utc::now().to_rfc3339();
    let summary = run_experiment(&config)?;
    let finished = chrono::Utc::now().to_rfc3339();

    let mut files = vec!["summary.csv".to_string()];
    let mut buf = Vec::new();
    write_summary(&mut buf, &summary)?;
    write_file(&args.out_dir.join("summary.csv"), buf)?;
    if args.runtime_table {
        let mut buf = Vec::new();
        write_runtime(&mut buf, &summary)?;
        write_file(&args.out_dir.join("runtime.csv"), buf)?;
        files.push("runtime.csv".into());
    }
    if args.dump {
        let path = args.out_dir.join("datasets.csv");
        let file = fs::File::create(&path).map_err(CliError::io(&path))?;
        write_datasets(std::io::BufWriter::new(file), &config)?;
        files.push("datasets.csv".into());
    }
    files.push("manifest.json".into());
    let manifest = RunManifest::new(&summary, started, finished, files);
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Output(e.to_string()))?;
    write_file(&args.out_dir.join("manifest.json"), format!("{json}\n"))?;

    for cell in &summary.cells {
        match &cell.stats {
            Some(s) => println!(
                "{:<9} alpha {:<4} error {:.4} ({:.4})  alpha_hat {:.4}  volume {:.4}",
                cell.algorithm.name(),
                cell.alpha,
                s.error_mu,
                s.error_sigma,
                s.alpha_hat_mu,
                s.volume_mu
            ),
            None => println!("{:<9} alpha {:<4} failed: {:?}", cell.algorithm.name(), cell.alpha, cell.status),
        }
    }
    if summary.all_failed() {
        return Err(CliError::AllCellsFailed);
    }
    Ok(())
}

//! Prints one summary line per cell for a small experiment grid.
//!
//! usage: grid [n] [p] [cov] [replicates] [tests] [seed]

use morderstats::experiments::{run_experiment, CovarianceKind, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let n: usize = arg(0, "100").parse()?;
    let p: usize = arg(1, "2").parse()?;
    let cov: CovarianceKind = arg(2, "A").parse()?;
    let mut cfg = ExperimentConfig::new(n, p, cov);
    cfg.replicates = arg(3, "10").parse()?;
    cfg.test_sets = arg(4, "100").parse()?;
    cfg.seed = arg(5, &cfg.seed.to_string()).parse()?;
    cfg.workers = None;

    let summary = run_experiment(&cfg)?;
    println!("alg        alpha  error_mu  error_sd  [min, max]       alpha_hat (sd)    many   few    volume   secs");
    for c in &summary.cells {
        match &c.stats {
            Some(s) => println!(
                "{:<10} {:<5}  {:.4}    {:.4}    [{:.3}, {:.3}]   {:.3} ({:.3})     {:.3}  {:.3}  {:8.3}  {:.2}",
                c.algorithm.name(),
                c.alpha,
                s.error_mu,
                s.error_sigma,
                s.error_min,
                s.error_max,
                s.alpha_hat_mu,
                s.alpha_hat_sigma,
                s.too_many_mu,
                s.too_few_mu,
                s.volume_mu,
                s.construction_seconds
            ),
            None => println!("{:<10} {:<5}  {:?}", c.algorithm.name(), c.alpha, c.status),
        }
    }
    Ok(())
}

use morderstats::experiments::{
    make_dataset, run_experiment, CovarianceKind, CovarianceSpec, ExperimentConfig, ExperimentSummary, Role,
};
use morderstats::Error;

fn without_timings(mut s: ExperimentSummary) -> ExperimentSummary {
    s.config.workers = None;
    for cell in &mut s.cells {
        for r in &mut cell.records {
            r.seconds = 0.0;
        }
        if let Some(stats) = &mut cell.stats {
            stats.construction_seconds = 0.0;
        }
    }
    s
}

#[test]
fn summaries_do_not_depend_on_workers() {
    let mut cfg = ExperimentConfig::new(40, 2, CovarianceKind::MixAB);
    cfg.replicates = 4;
    cfg.test_sets = 10;
    let serial = run_experiment(&cfg).unwrap();
    cfg.workers = Some(3);
    let threaded = run_experiment(&cfg).unwrap();
    cfg.workers = None;
    let pooled = run_experiment(&cfg).unwrap();
    let serial = without_timings(serial);
    assert_eq!(serial, without_timings(threaded));
    assert_eq!(serial, without_timings(pooled));
    assert!(serial.cells.iter().all(|c| c.records.len() == 4));
}

#[test]
fn seeds_change_the_data() {
    let spec = CovarianceSpec::new(CovarianceKind::A, 2).unwrap();
    let a = make_dataset(spec, 20, 0, Role::Train, 1).unwrap();
    let b = make_dataset(spec, 20, 0, Role::Train, 2).unwrap();
    let c = make_dataset(spec, 20, 1, Role::Train, 1).unwrap();
    let t = make_dataset(spec, 20, 0, Role::Test(0), 1).unwrap();
    assert_ne!(a, b);
    assert_ne!(a, c);
    assert_ne!(a, t);
    assert_eq!(a, make_dataset(spec, 20, 0, Role::Train, 1).unwrap());
}

#[test]
fn covariance_changes_scale_not_draws() {
    // Under A and B the same standard normal draws are mapped by different
    // Cholesky factors, so the first coordinates differ only by scale.
    let a = make_dataset(CovarianceSpec::new(CovarianceKind::A, 2).unwrap(), 30, 2, Role::Train, 9).unwrap();
    let b = make_dataset(CovarianceSpec::new(CovarianceKind::B, 2).unwrap(), 30, 2, Role::Train, 9).unwrap();
    let ratio = b.point(0)[0] / a.point(0)[0];
    for i in 0..30 {
        assert!((b.point(i)[0] - ratio * a.point(i)[0]).abs() < 1e-12);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = ExperimentConfig::new(41, 2, CovarianceKind::MixAB);
    assert!(run_experiment(&cfg).is_err());
    cfg.n = 40;
    cfg.alphas = vec![1.0];
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
    let cfg = ExperimentConfig::new(40, 4, CovarianceKind::A);
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
}

#[test]
fn too_small_samples_fail_cells_not_runs() {
    let mut cfg = ExperimentConfig::new(6, 2, CovarianceKind::A);
    cfg.alphas = vec![0.9];
    cfg.replicates = 2;
    cfg.test_sets = 3;
    let s = run_experiment(&cfg).unwrap();
    let mahal = s.cell(morderstats::Algorithm::Mahal, 0.9).unwrap();
    assert!(mahal.stats.is_none());
    assert!(s.cell(morderstats::Algorithm::Direct, 0.9).unwrap().stats.is_some());
}

use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexRegion, Tolerance};
use crate::points::PointSet;

/// Coverage fractions closer than this to `1 - alpha_hat` count as exact.
const COVERAGE_TIE: f64 = 1e-12;

/// Coverage of one region on a batch of test sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// `|f - (1 - alpha_hat)|` per test set, `f` the fraction inside.
    pub errors: Vec<f64>,
    /// Test sets with `f > 1 - alpha_hat`.
    pub too_many: usize,
    /// Test sets with `f < 1 - alpha_hat`.
    pub too_few: usize,
}

pub fn evaluate_region(region: &ConvexRegion, alpha_hat: f64, tests: &[PointSet], tol: Tolerance) -> Evaluation {
    let nominal = 1.0 - alpha_hat;
    let mut eval = Evaluation { errors: Vec::with_capacity(tests.len()), too_many: 0, too_few: 0 };
    for t in tests {
        let f = if t.is_empty() { 0.0 } else { region.count_inside(t, tol) as f64 / t.len() as f64 };
        let diff = f - nominal;
        if diff > COVERAGE_TIE {
            eval.too_many += 1;
        } else if diff < -COVERAGE_TIE {
            eval.too_few += 1;
        }
        eval.errors.push(diff.abs());
    }
    eval
}

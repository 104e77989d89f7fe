//! Side-by-side robustness sweep of the two scheme variants.

use alloc::vec::Vec;

use crate::error::Error;
use crate::mesh::GridSpec;
use crate::ops::linf;
use crate::stepper::{Algorithm, Forcing, SolverConfig, Stepper};
use crate::verify::manufactured::ManufacturedSolution;

/// Largest admissible `‖m̃‖∞` before a run counts as diverged.
pub const TILDE_BOUND: f64 = 2.0;

/// How a sweep cell ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    /// All steps taken with `‖m̃‖∞ ≤ 2`.
    Completed,
    /// `‖m̃‖∞` exceeded the bound at this step.
    Diverged(usize),
    /// Projection met a near-zero `|m̃|` at this step.
    ProjectionFailure(usize),
    /// The configuration is not runnable (e.g. fewer than two steps fit in T).
    Invalid,
}

/// One cell of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRow {
    /// Scheme variant.
    pub algorithm: Algorithm,
    /// Damping.
    pub alpha: f64,
    /// `k / h`.
    pub ratio: f64,
    /// Steps actually taken.
    pub steps: usize,
    /// Outcome of the run.
    pub outcome: Outcome,
    /// Largest `| |m̃| - 1 |` over the steps taken.
    pub max_tilde_deviation: f64,
}

impl StabilityRow {
    /// No projection failure and `‖m̃‖∞ ≤ 2` throughout.
    pub fn completed(&self) -> bool {
        self.outcome == Outcome::Completed
    }
}

/// Runs both variants for every `(alpha, k/h)` pair on `grid` up to `t_final`,
/// starting from the manufactured field at `t = 0` without forcing.
pub fn stability_comparison(alphas: &[f64], ratios: &[f64], grid: &GridSpec, t_final: f64) -> Vec<StabilityRow> {
    let mut rows = Vec::with_capacity(alphas.len() * ratios.len() * 2);
    for &alpha in alphas {
        for &ratio in ratios {
            for algorithm in [Algorithm::Intermediate, Algorithm::Projected] {
                rows.push(sweep_cell(grid, alpha, ratio, t_final, algorithm));
            }
        }
    }
    rows
}

fn sweep_cell(grid: &GridSpec, alpha: f64, ratio: f64, t_final: f64, algorithm: Algorithm) -> StabilityRow {
    let mut row = StabilityRow {
        algorithm,
        alpha,
        ratio,
        steps: 0,
        outcome: Outcome::Invalid,
        max_tilde_deviation: 0.0,
    };
    let k = ratio * grid.h_min();
    let Ok(cfg) = SolverConfig::new(*grid, alpha, k, t_final, algorithm, Forcing::None) else {
        return row;
    };
    let Ok(stepper) = Stepper::new(cfg) else {
        return row;
    };
    let Ok(ms) = ManufacturedSolution::new(alpha, grid.dim()) else {
        return row;
    };
    let m0 = ms.sample(grid, 0.0);
    let mut state = match stepper.start(&m0) {
        Ok(s) => s,
        Err(e) => {
            row.outcome = failure(e, 1);
            return row;
        }
    };
    let total = cfg.steps();
    loop {
        row.steps = state.step;
        let (lo, hi) = state.tilde_curr.length_range();
        row.max_tilde_deviation = row.max_tilde_deviation.max((1.0 - lo).abs()).max((hi - 1.0).abs());
        if linf(&state.tilde_curr) > TILDE_BOUND {
            row.outcome = Outcome::Diverged(state.step);
            return row;
        }
        if state.step == total {
            row.outcome = Outcome::Completed;
            return row;
        }
        state = match stepper.step(&state) {
            Ok(s) => s,
            Err(e) => {
                row.outcome = failure(e, state.step + 1);
                return row;
            }
        };
    }
}

fn failure(e: Error, step: usize) -> Outcome {
    match e {
        Error::ProjectionFailure { step, .. } => Outcome::ProjectionFailure(step),
        _ => Outcome::ProjectionFailure(step),
    }
}

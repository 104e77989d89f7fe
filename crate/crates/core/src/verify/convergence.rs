//! Error norms against the manufactured solution and observed orders.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mesh::{GridSpec, VectorField};
use crate::ops::{forward_gradient, l2};
use crate::stepper::{Algorithm, Forcing, SolverConfig, StepView, Stepper};
use crate::verify::manufactured::ManufacturedSolution;

/// Every projected and intermediate level of one run.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    /// `(n, t^n, m^n, m̃^n)`; `m̃^0` is absent.
    pub levels: Vec<(usize, f64, VectorField, Option<VectorField>)>,
}

impl Trajectory {
    /// Observer that records a [`StepView`].
    pub fn record(&mut self, v: StepView<'_>) {
        self.levels.push((v.step, v.time, v.m.clone(), v.m_tilde.cloned()));
    }

    /// Largest `| |m^n| - 1 |` over all stored levels.
    pub fn max_unit_deviation(&self) -> f64 {
        self.levels.iter().map(|l| l.2.unit_deviation()).fold(0.0, f64::max)
    }
}

/// Both error norms plus start-up diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPair {
    /// `max_{n ≥ 1} ‖𝒫_h m_e(t_n) - m^n‖₂`
    pub linf_l2: f64,
    /// `(k Σ_{p ≥ 1} ‖∇_h(𝒫_h m_e(t_p) - m̃^p)‖₂²)^{1/2}`
    pub l2_h1: f64,
    /// `‖𝒫_h m_e(t_1) - m^1‖₂`
    pub startup_l2: f64,
    /// `‖∇_h(𝒫_h m_e(t_1) - m^1)‖₂`
    pub startup_grad_l2: f64,
}

/// Computes the two error norms from a stored trajectory against any exact
/// field `exact(x, t)`. Levels are expected at every step.
pub fn error_norms(traj: &Trajectory, k: f64, exact: impl Fn([f64; 3], f64) -> [f64; 3]) -> ErrorPair {
    let mut linf_l2: f64 = 0.0;
    let mut sum = 0.0;
    let mut startup_l2 = 0.0;
    let mut startup_grad_l2 = 0.0;
    for (n, t, m, tilde) in &traj.levels {
        if *n == 0 {
            continue;
        }
        let grid: GridSpec = *m.grid();
        let ex = crate::mesh::sample_on_grid(&grid, *t, &exact);
        let e = ex.lincomb(1.0, m, -1.0);
        let el2 = l2(&e);
        linf_l2 = linf_l2.max(el2);
        if *n == 1 {
            startup_l2 = el2;
            startup_grad_l2 = forward_gradient(&e).l2();
        }
        if let Some(tilde) = tilde {
            let g = forward_gradient(&ex.lincomb(1.0, tilde, -1.0)).l2();
            sum += g * g;
        }
    }
    ErrorPair {
        linf_l2,
        l2_h1: libm::sqrt(k * sum),
        startup_l2,
        startup_grad_l2,
    }
}

/// `log(e_i / e_{i+1}) / log(h_i / h_{i+1})` for successive entries; `None`
/// when either error is zero or not finite.
pub fn observed_orders(errors: &[f64], h: &[f64]) -> Vec<Option<f64>> {
    assert_eq!(errors.len(), h.len(), "one mesh size per error");
    (1..errors.len())
        .map(|i| {
            let ok = |e: f64| e > 0.0 && e.is_finite();
            (ok(errors[i - 1]) && ok(errors[i]))
                .then(|| libm::log(errors[i - 1] / errors[i]) / libm::log(h[i - 1] / h[i]))
        })
        .collect()
}

/// Parameters shared by every level of a refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyTemplate {
    /// Spatial dimension.
    pub dim: usize,
    /// Damping.
    pub alpha: f64,
    /// Fixed ratio `k / h`.
    pub k_over_h: f64,
    /// Final time.
    pub t_final: f64,
    /// Scheme variant.
    pub algorithm: Algorithm,
}

/// One refinement level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelRecord {
    /// Cells per axis.
    pub n: usize,
    /// Mesh size.
    pub h: f64,
    /// Time step.
    pub k: f64,
    /// Number of steps taken.
    pub steps: usize,
    /// Error norms.
    pub errors: ErrorPair,
    /// Largest `| |m^n| - 1 |` seen in the run.
    pub max_unit_deviation: f64,
}

/// Result of [`convergence_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// One record per level, coarse to fine.
    pub levels: Vec<LevelRecord>,
    /// Observed orders of the `ℓ∞(ℓ²)` error between adjacent levels.
    pub orders_linf_l2: Vec<Option<f64>>,
    /// Observed orders of the `ℓ²(H¹)` error between adjacent levels.
    pub orders_l2_h1: Vec<Option<f64>>,
    /// Observed orders of the start-up error `‖e¹‖₂`.
    pub orders_startup: Vec<Option<f64>>,
}

/// Runs one level of the manufactured problem and returns its record.
pub fn run_level(template: &StudyTemplate, n: usize, ms: &ManufacturedSolution) -> Result<LevelRecord> {
    let grid = GridSpec::uniform(template.dim, n)?;
    let h = grid.h_min();
    let k = template.k_over_h * h;
    let cfg = SolverConfig::new(
        grid,
        template.alpha,
        k,
        template.t_final,
        template.algorithm,
        Forcing::Manufactured,
    )?;
    let stepper = Stepper::new(cfg)?;
    let m0 = ms.sample(&grid, 0.0);
    let mut traj = Trajectory::default();
    stepper.run(&m0, 1, |v| traj.record(v))?;
    Ok(LevelRecord {
        n,
        h,
        k,
        steps: cfg.steps(),
        errors: error_norms(&traj, k, |x, t| ms.exact(x, t)),
        max_unit_deviation: traj.max_unit_deviation(),
    })
}

/// Refinement study on the manufactured problem with `k = r h`.
///
/// Needs at least three strictly refining levels and `α > 3`.
pub fn convergence_study(
    levels: &[usize],
    template: &StudyTemplate,
    ms: &ManufacturedSolution,
) -> Result<ConvergenceReport> {
    if levels.len() < 3 {
        return Err(Error::InvalidStudy("at least three levels are required"));
    }
    if levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidStudy("levels must strictly refine"));
    }
    if !(template.alpha > 3.0) {
        return Err(Error::InvalidStudy("alpha must exceed 3"));
    }
    if ms.alpha() != template.alpha || ms.dim() != template.dim {
        return Err(Error::InvalidStudy("manufactured solution does not match the template"));
    }
    let records = levels
        .iter()
        .map(|&n| run_level(template, n, ms))
        .collect::<Result<Vec<_>>>()?;
    Ok(report_from_levels(records))
}

/// Fits orders for already computed levels.
pub fn report_from_levels(levels: Vec<LevelRecord>) -> ConvergenceReport {
    let col = |f: fn(&LevelRecord) -> f64| levels.iter().map(f).collect::<Vec<_>>();
    let h = col(|l| l.h);
    ConvergenceReport {
        orders_linf_l2: observed_orders(&col(|l| l.errors.linf_l2), &h),
        orders_l2_h1: observed_orders(&col(|l| l.errors.l2_h1), &h),
        orders_startup: observed_orders(&col(|l| l.errors.startup_l2), &h),
        levels,
    }
}

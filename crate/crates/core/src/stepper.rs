//! Time integration: BDF2 with explicit extrapolated nonlinear terms, an
//! implicit constant-coefficient diffusion solve and point-wise projection.
//!
//! Both variants solve
//!
//! ```text
//! (3/(2k) I - α Δ_h) m̃^{n+2} = q^{n+2},    m^{n+2} = m̃^{n+2} / |m̃^{n+2}|
//! ```
//!
//! and differ only in `q`: [`Algorithm::Projected`] builds the time stencil
//! from the projected history `m^n, m^{n+1}`, [`Algorithm::Intermediate`] from
//! the pre-projection history `m̃^n, m̃^{n+1}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::helmholtz::HelmholtzPlan;
use crate::mesh::{norm3, sample_on_grid, GridSpec, VectorField};
use crate::ops::{averaged_gradient, cross, laplacian};
use crate::verify::manufactured::ManufacturedSolution;

/// Below this length the projection is treated as a blow-up.
pub const PROJECTION_EPS: f64 = 1e-8;

/// Advisory bounds on `k / h`; runs outside them are allowed but flagged.
pub const RATIO_BOUNDS: (f64, f64) = (0.1, 10.0);

/// Which BDF2 variant to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Time stencil on intermediate fields (`alg21`).
    Intermediate,
    /// Time stencil on projected fields (`alg22`).
    Projected,
}

impl Algorithm {
    /// Config-file spelling.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Intermediate => "alg21",
            Algorithm::Projected => "alg22",
        }
    }
}

/// Source term added to the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Forcing {
    /// Plain Landau-Lifshitz dynamics.
    None,
    /// Residual of the default manufactured solution, so that it becomes exact.
    Manufactured,
}

impl Forcing {
    /// Config-file spelling.
    pub fn name(self) -> &'static str {
        match self {
            Forcing::None => "none",
            Forcing::Manufactured => "manufactured",
        }
    }
}

/// Physical and numerical parameters of one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Spatial grid.
    pub grid: GridSpec,
    /// Damping `α > 0`.
    pub alpha: f64,
    /// Time step `k > 0`.
    pub k: f64,
    /// Final time `T > 0`.
    pub t_final: f64,
    /// Scheme variant.
    pub algorithm: Algorithm,
    /// Source term.
    pub forcing: Forcing,
}

impl SolverConfig {
    /// Builds and validates a configuration.
    pub fn new(
        grid: GridSpec,
        alpha: f64,
        k: f64,
        t_final: f64,
        algorithm: Algorithm,
        forcing: Forcing,
    ) -> Result<Self> {
        let cfg = Self {
            grid,
            alpha,
            k,
            t_final,
            algorithm,
            forcing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks positivity of `α, k, T` and that at least two steps fit.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("alpha", self.alpha), ("dt", self.k), ("T", self.t_final)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositive { name, value });
            }
        }
        let steps = self.steps();
        if steps < 2 {
            return Err(Error::TooFewSteps { steps });
        }
        Ok(())
    }

    /// `floor(T / k)`, tolerant to round-off in `T / k` just below an integer.
    pub fn steps(&self) -> usize {
        let r = self.t_final / self.k;
        libm::floor(r * (1.0 + 1e-12)) as usize
    }

    /// `k / h` on the finest axis.
    pub fn ratio(&self) -> f64 {
        self.k / self.grid.h_min()
    }

    /// `Some(k / h)` when the ratio falls outside [`RATIO_BOUNDS`].
    pub fn ratio_warning(&self) -> Option<f64> {
        let r = self.ratio();
        (r < RATIO_BOUNDS.0 || r > RATIO_BOUNDS.1).then_some(r)
    }
}

/// The two retained time levels of the BDF2 history.
#[derive(Debug, Clone, PartialEq)]
pub struct StepperState {
    /// Index of the newest level (`n + 1`).
    pub step: usize,
    /// Time of the newest level.
    pub time: f64,
    /// Projected field `m^n`.
    pub prev: VectorField,
    /// Projected field `m^{n+1}`.
    pub curr: VectorField,
    /// Intermediate field `m̃^n` (`m^0` at the start).
    pub tilde_prev: VectorField,
    /// Intermediate field `m̃^{n+1}`.
    pub tilde_curr: VectorField,
}

/// Read-only view handed to observers.
#[derive(Debug, Clone, Copy)]
pub struct StepView<'a> {
    /// Step index `n`.
    pub step: usize,
    /// Time `t^n = n k`.
    pub time: f64,
    /// Projected field `m^n`.
    pub m: &'a VectorField,
    /// Intermediate field `m̃^n`; absent for the initial data.
    pub m_tilde: Option<&'a VectorField>,
}

/// `2a - b` point-wise (ghosts included, so mirror extension is preserved).
pub fn extrapolate(a: &VectorField, b: &VectorField) -> VectorField {
    a.lincomb(2.0, b, -1.0)
}

/// Point-wise projection `m̃ / |m̃|`.
///
/// Fails at the first interior point where `|m̃| ≤` [`PROJECTION_EPS`].
pub fn project(m_tilde: &VectorField) -> Result<VectorField> {
    let g = *m_tilde.grid();
    let mut out = VectorField::zeros(g);
    for idx in g.interior() {
        let v = m_tilde.at(idx);
        let len = norm3(v);
        if !(len > PROJECTION_EPS) {
            return Err(Error::ProjectionFailure {
                step: 0,
                index: idx,
                magnitude: len,
            });
        }
        out.set(idx, [v[0] / len, v[1] / len, v[2] / len]);
    }
    Ok(out.extended())
}

/// Drives one configuration: owns the two Helmholtz plans and the source.
#[derive(Debug, Clone)]
pub struct Stepper {
    cfg: SolverConfig,
    bdf2: HelmholtzPlan,
    euler: HelmholtzPlan,
    source: Option<ManufacturedSolution>,
}

impl Stepper {
    /// Validates `cfg` and factors both systems.
    pub fn new(cfg: SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let source = match cfg.forcing {
            Forcing::None => None,
            Forcing::Manufactured => Some(ManufacturedSolution::new(cfg.alpha, cfg.grid.dim())?),
        };
        Ok(Self {
            bdf2: HelmholtzPlan::new(&cfg.grid, cfg.alpha, cfg.k)?,
            euler: HelmholtzPlan::with_shift(&cfg.grid, cfg.alpha, 1.0 / cfg.k)?,
            cfg,
            source,
        })
    }

    /// The configuration.
    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Plan for `(3/(2k) I - α Δ_h)`.
    pub fn plan(&self) -> &HelmholtzPlan {
        &self.bdf2
    }

    /// Plan for the start-up system `(1/k I - α Δ_h)`.
    pub fn startup_plan(&self) -> &HelmholtzPlan {
        &self.euler
    }

    /// Source sampled at time `t`, if any.
    pub fn forcing_at(&self, t: f64) -> Option<VectorField> {
        self.source
            .as_ref()
            .map(|s| sample_on_grid(&self.cfg.grid, t, |x, t| s.forcing(x, t)))
    }

    /// Explicit part shared by every step:
    /// `history - a × Δ_h b + α |𝒜_h∇_h a|² a + f(t)`.
    fn explicit_rhs(&self, history: VectorField, a: &VectorField, b: &VectorField, t: f64) -> VectorField {
        let alpha = self.cfg.alpha;
        let gyro = cross(a, &laplacian(b));
        let grad_sq = averaged_gradient(a).frobenius_sq();
        let force = self.forcing_at(t);
        let g = self.cfg.grid;
        let mut q = history;
        for (p, idx) in g.interior().enumerate() {
            let k = g.index(idx);
            let mut v = q.at_offset(k);
            let gy = gyro.at_offset(k);
            let av = a.at_offset(k);
            for c in 0..3 {
                v[c] += -gy[c] + alpha * grad_sq[p] * av[c];
            }
            if let Some(f) = &force {
                let fv = f.at_offset(k);
                for c in 0..3 {
                    v[c] += fv[c];
                }
            }
            q.set_offset(k, v);
        }
        q.extended()
    }

    /// Right-hand side of the projected-history scheme:
    /// `(2m^{n+1} - m^n/2)/k - m̂ × Δ_h m̂ + α|𝒜_h∇_h m̂|² m̂ (+ f)`,
    /// `m̂ = 2m^{n+1} - m^n`.
    pub fn rhs_projected(&self, state: &StepperState) -> VectorField {
        let k = self.cfg.k;
        let hat = extrapolate(&state.curr, &state.prev);
        let history = state.curr.lincomb(2.0 / k, &state.prev, -0.5 / k);
        self.explicit_rhs(history, &hat, &hat, state.time + k)
    }

    /// Right-hand side of the intermediate-history scheme:
    /// `(2m̃^{n+1} - m̃^n/2)/k - m̂ × Δ_h(2m̃^{n+1} - m̃^n) + α|𝒜_h∇_h m̂|² m̂ (+ f)`.
    pub fn rhs_intermediate(&self, state: &StepperState) -> VectorField {
        let k = self.cfg.k;
        let hat = extrapolate(&state.curr, &state.prev);
        let hat_tilde = extrapolate(&state.tilde_curr, &state.tilde_prev);
        let history = state.tilde_curr.lincomb(2.0 / k, &state.tilde_prev, -0.5 / k);
        self.explicit_rhs(history, &hat, &hat_tilde, state.time + k)
    }

    /// Right-hand side of the configured scheme.
    pub fn rhs(&self, state: &StepperState) -> VectorField {
        match self.cfg.algorithm {
            Algorithm::Projected => self.rhs_projected(state),
            Algorithm::Intermediate => self.rhs_intermediate(state),
        }
    }

    /// First-order semi-implicit projection step producing `(m̃¹, m¹)`:
    /// `(1/k I - α Δ_h) m̃¹ = m⁰/k - m⁰ × Δ_h m⁰ + α|𝒜_h∇_h m⁰|² m⁰ (+ f(t¹))`.
    pub fn first_step(&self, m0: &VectorField) -> Result<(VectorField, VectorField)> {
        let k = self.cfg.k;
        let q = self.explicit_rhs(m0.scaled(1.0 / k), m0, m0, k);
        let tilde = self.euler.solve(&q)?;
        let m1 = project(&tilde).map_err(|e| with_step(e, 1))?;
        Ok((tilde, m1))
    }

    /// History after the start-up step. `m̃⁰` is taken to be `m⁰`.
    pub fn start(&self, m0: &VectorField) -> Result<StepperState> {
        if m0.grid() != &self.cfg.grid {
            return Err(Error::GridMismatch);
        }
        let (tilde, m1) = self.first_step(m0)?;
        Ok(StepperState {
            step: 1,
            time: self.cfg.k,
            prev: m0.clone(),
            curr: m1,
            tilde_prev: m0.clone(),
            tilde_curr: tilde,
        })
    }

    /// One BDF2 step.
    pub fn step(&self, state: &StepperState) -> Result<StepperState> {
        let q = self.rhs(state);
        let tilde = self.bdf2.solve(&q)?;
        let next = state.step + 1;
        let m = project(&tilde).map_err(|e| with_step(e, next))?;
        Ok(StepperState {
            step: next,
            time: next as f64 * self.cfg.k,
            prev: state.curr.clone(),
            curr: m,
            tilde_prev: state.tilde_curr.clone(),
            tilde_curr: tilde,
        })
    }

    /// Runs the start-up step and `floor(T/k) - 1` BDF2 steps.
    ///
    /// `observe` sees the initial data, every `stride`-th level and the final
    /// level; its return values are collected in order.
    pub fn run<T>(
        &self,
        m0: &VectorField,
        stride: usize,
        mut observe: impl FnMut(StepView<'_>) -> T,
    ) -> Result<(StepperState, Vec<T>)> {
        let stride = stride.max(1);
        let total = self.cfg.steps();
        let mut series = Vec::new();
        series.push(observe(StepView {
            step: 0,
            time: 0.0,
            m: m0,
            m_tilde: None,
        }));
        let mut state = self.start(m0)?;
        loop {
            if state.step % stride == 0 || state.step == total {
                series.push(observe(StepView {
                    step: state.step,
                    time: state.time,
                    m: &state.curr,
                    m_tilde: Some(&state.tilde_curr),
                }));
            }
            if state.step == total {
                break;
            }
            state = self.step(&state)?;
        }
        Ok((state, series))
    }
}

fn with_step(e: Error, step: usize) -> Error {
    match e {
        Error::ProjectionFailure { index, magnitude, .. } => Error::ProjectionFailure { step, index, magnitude },
        other => other,
    }
}

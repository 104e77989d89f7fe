//! Closed-form exact solution with Neumann-compatible angles.
//!
//! ```text
//! θ = 0.7 + 0.3 cos(t) P(x),   φ = t + 0.2 P(x),   P(x) = Π_a cos(π x_a)
//! m_e = (sin θ cos φ, sin θ sin φ, cos θ)
//! f   = ∂_t m_e + m_e × Δm_e - α Δm_e - α |∇m_e|² m_e
//! ```
//!
//! `P` has zero normal derivative on every face, so `m_e` does too.

use core::f64::consts::PI;

use libm::{cos, sin};

use crate::error::{Error, Result};
use crate::mesh::{sample_on_grid, GridSpec, VectorField};
use crate::ops::cross3;

/// The default manufactured solution for a given damping and dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedSolution {
    alpha: f64,
    dim: usize,
}

struct Angles {
    theta: f64,
    phi: f64,
    theta_t: f64,
    phi_t: f64,
    theta_x: [f64; 3],
    phi_x: [f64; 3],
    theta_lap: f64,
    phi_lap: f64,
}

struct Frame {
    m: [f64; 3],
    m_th: [f64; 3],
    m_ph: [f64; 3],
    m_thph: [f64; 3],
    m_phph: [f64; 3],
}

impl ManufacturedSolution {
    /// Solution on `[0,1]^dim` with damping `alpha`.
    pub fn new(alpha: f64, dim: usize) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::NonPositive {
                name: "alpha",
                value: alpha,
            });
        }
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(Self { alpha, dim })
    }

    /// Damping the forcing was built for.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Spatial dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn angles(&self, x: [f64; 3], t: f64) -> Angles {
        let c: [f64; 3] = core::array::from_fn(|a| if a < self.dim { cos(PI * x[a]) } else { 1.0 });
        let s: [f64; 3] = core::array::from_fn(|a| if a < self.dim { sin(PI * x[a]) } else { 0.0 });
        let p = c[0] * c[1] * c[2];
        let mut p_x = [0.0; 3];
        for (a, d) in p_x.iter_mut().enumerate().take(self.dim) {
            let others: f64 = (0..3).filter(|&b| b != a).map(|b| c[b]).product();
            *d = -PI * s[a] * others;
        }
        let p_lap = -(self.dim as f64) * PI * PI * p;
        let ct = cos(t);
        Angles {
            theta: 0.7 + 0.3 * ct * p,
            phi: t + 0.2 * p,
            theta_t: -0.3 * sin(t) * p,
            phi_t: 1.0,
            theta_x: p_x.map(|d| 0.3 * ct * d),
            phi_x: p_x.map(|d| 0.2 * d),
            theta_lap: 0.3 * ct * p_lap,
            phi_lap: 0.2 * p_lap,
        }
    }

    fn frame(theta: f64, phi: f64) -> Frame {
        let (st, ct) = (sin(theta), cos(theta));
        let (sp, cp) = (sin(phi), cos(phi));
        Frame {
            m: [st * cp, st * sp, ct],
            m_th: [ct * cp, ct * sp, -st],
            m_ph: [-st * sp, st * cp, 0.0],
            m_thph: [-ct * sp, ct * cp, 0.0],
            m_phph: [-st * cp, -st * sp, 0.0],
        }
    }

    /// `m_e(x, t)`.
    pub fn exact(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let a = self.angles(x, t);
        Self::frame(a.theta, a.phi).m
    }

    /// `∂_t m_e`.
    pub fn time_derivative(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let a = self.angles(x, t);
        let f = Self::frame(a.theta, a.phi);
        core::array::from_fn(|c| f.m_th[c] * a.theta_t + f.m_ph[c] * a.phi_t)
    }

    /// `∇m_e` as `[axis][component]`.
    pub fn gradient(&self, x: [f64; 3], t: f64) -> [[f64; 3]; 3] {
        let a = self.angles(x, t);
        let f = Self::frame(a.theta, a.phi);
        core::array::from_fn(|ax| core::array::from_fn(|c| f.m_th[c] * a.theta_x[ax] + f.m_ph[c] * a.phi_x[ax]))
    }

    /// `Δm_e`.
    #[allow(clippy::needless_range_loop)]
    pub fn laplacian(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let a = self.angles(x, t);
        let f = Self::frame(a.theta, a.phi);
        let mut out = [0.0; 3];
        for ax in 0..self.dim {
            let (tx, px) = (a.theta_x[ax], a.phi_x[ax]);
            for c in 0..3 {
                // m_θθ = -m
                out[c] += -f.m[c] * tx * tx + 2.0 * f.m_thph[c] * tx * px + f.m_phph[c] * px * px;
            }
        }
        for c in 0..3 {
            out[c] += f.m_th[c] * a.theta_lap + f.m_ph[c] * a.phi_lap;
        }
        out
    }

    /// `|∇m_e|²`.
    pub fn grad_sq(&self, x: [f64; 3], t: f64) -> f64 {
        let a = self.angles(x, t);
        let st = sin(a.theta);
        (0..self.dim)
            .map(|ax| a.theta_x[ax] * a.theta_x[ax] + st * st * a.phi_x[ax] * a.phi_x[ax])
            .sum()
    }

    /// Source term making `m_e` an exact solution.
    pub fn forcing(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let m = self.exact(x, t);
        let mt = self.time_derivative(x, t);
        let lap = self.laplacian(x, t);
        let g2 = self.grad_sq(x, t);
        let gyro = cross3(m, lap);
        core::array::from_fn(|c| mt[c] + gyro[c] - self.alpha * lap[c] - self.alpha * g2 * m[c])
    }

    /// `𝒫_h m_e(·, t)` with mirror ghosts.
    pub fn sample(&self, grid: &GridSpec, t: f64) -> VectorField {
        sample_on_grid(grid, t, |x, t| self.exact(x, t))
    }
}

//! Exact solve of `(s I - α Δ_h) u = q` with mirror ghosts.
//!
//! The orthonormal DCT-II basis `cos(π p (i - 1/2) / N)` diagonalizes the
//! mirror-Neumann Laplacian along each axis, with eigenvalue
//! `-(4/h²) sin²(π p / (2N))`. The transform is applied as a dense matrix per
//! axis, which is O(N) per point and plenty for N ≤ 64.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mesh::{GridSpec, ScalarField, VectorField};
use crate::ops::laplacian;

/// Cosine-mode coefficients of a scalar field, compact row-major over modes
/// `(p, q, r)` with `p in 0..N_x` etc.
#[derive(Debug, Clone, PartialEq)]
pub struct Modes {
    grid: GridSpec,
    coeffs: Vec<f64>,
}

impl Modes {
    /// Wraps coefficients. Panics on length mismatch.
    pub fn new(grid: GridSpec, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), grid.interior_len(), "mode count mismatch");
        Self { grid, coeffs }
    }

    /// Grid of the underlying field.
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Coefficients in compact mode order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of mode `p` (unused axes take 0).
    pub fn at(&self, p: [usize; 3]) -> f64 {
        let n = [self.grid.n(0), self.grid.n(1), self.grid.n(2)];
        self.coeffs[(p[0] * n[1] + p[1]) * n[2] + p[2]]
    }
}

/// Orthonormal DCT-II along each active axis of a grid.
#[derive(Debug, Clone)]
pub(crate) struct CosineTransform {
    dims: [usize; 3],
    // basis[axis][p * n + i] = s_p cos(π p (i + 1/2) / n), i 0-based
    basis: [Vec<f64>; 3],
}

impl CosineTransform {
    pub(crate) fn new(grid: &GridSpec) -> Self {
        let dims = [grid.n(0), grid.n(1), grid.n(2)];
        let basis = core::array::from_fn(|a| {
            if grid.is_active(a) {
                cosine_matrix(dims[a])
            } else {
                vec![1.0]
            }
        });
        Self { dims, basis }
    }

    pub(crate) fn forward(&self, data: &mut [f64]) {
        for axis in 0..3 {
            if self.dims[axis] > 1 {
                self.apply_axis(data, axis, false);
            }
        }
    }

    pub(crate) fn inverse(&self, data: &mut [f64]) {
        for axis in 0..3 {
            if self.dims[axis] > 1 {
                self.apply_axis(data, axis, true);
            }
        }
    }

    fn apply_axis(&self, data: &mut [f64], axis: usize, transpose: bool) {
        let n = self.dims[axis];
        let stride: usize = self.dims[axis + 1..].iter().product();
        let outer: usize = self.dims[..axis].iter().product();
        let b = &self.basis[axis];
        let mut line = vec![0.0; n];
        let mut out = vec![0.0; n];
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * n * stride + inner;
                for (i, x) in line.iter_mut().enumerate() {
                    *x = data[base + i * stride];
                }
                if transpose {
                    out.iter_mut().for_each(|y| *y = 0.0);
                    for (p, &c) in line.iter().enumerate() {
                        let row = &b[p * n..(p + 1) * n];
                        for (y, &bv) in out.iter_mut().zip(row) {
                            *y += bv * c;
                        }
                    }
                } else {
                    for (p, y) in out.iter_mut().enumerate() {
                        let row = &b[p * n..(p + 1) * n];
                        *y = row.iter().zip(&line).map(|(bv, x)| bv * x).sum();
                    }
                }
                for (i, y) in out.iter().enumerate() {
                    data[base + i * stride] = *y;
                }
            }
        }
    }
}

fn cosine_matrix(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let s0 = libm::sqrt(1.0 / nf);
    let s = libm::sqrt(2.0 / nf);
    let mut m = vec![0.0; n * n];
    for p in 0..n {
        let scale = if p == 0 { s0 } else { s };
        for i in 0..n {
            m[p * n + i] = scale * libm::cos(PI * p as f64 * (i as f64 + 0.5) / nf);
        }
    }
    m
}

/// Orthonormal DCT-II of the interior values of `f`.
pub fn dct2_forward(f: &ScalarField) -> Modes {
    let grid = *f.grid();
    let mut data = f.interior_values();
    CosineTransform::new(&grid).forward(&mut data);
    Modes { grid, coeffs: data }
}

/// Inverse of [`dct2_forward`]; ghosts of the result are mirror-extended.
pub fn dct2_inverse(modes: &Modes) -> ScalarField {
    let mut data = modes.coeffs.clone();
    CosineTransform::new(&modes.grid).inverse(&mut data);
    ScalarField::from_interior(modes.grid, &data)
}

/// Factored form of `(shift I - α Δ_h)` on a grid.
#[derive(Debug, Clone)]
pub struct HelmholtzPlan {
    grid: GridSpec,
    shift: f64,
    alpha: f64,
    eigenvalues: Vec<f64>,
    transform: CosineTransform,
}

impl HelmholtzPlan {
    /// Plan for the BDF2 system `(3/(2k) I - α Δ_h)`.
    pub fn new(grid: &GridSpec, alpha: f64, k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::NonPositive { name: "dt", value: k });
        }
        Self::with_shift(grid, alpha, 1.5 / k)
    }

    /// Plan for `(shift I - α Δ_h)` with an arbitrary positive shift.
    pub fn with_shift(grid: &GridSpec, alpha: f64, shift: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::NonPositive {
                name: "alpha",
                value: alpha,
            });
        }
        if !(shift > 0.0) {
            return Err(Error::NonPositive {
                name: "shift",
                value: shift,
            });
        }
        let axis_eigs: [Vec<f64>; 3] = core::array::from_fn(|a| {
            let n = grid.n(a);
            if !grid.is_active(a) {
                return vec![0.0];
            }
            let h = grid.h_axis(a);
            (0..n)
                .map(|p| {
                    let s = libm::sin(PI * p as f64 / (2.0 * n as f64));
                    4.0 / (h * h) * s * s
                })
                .collect()
        });
        let mut eigenvalues = Vec::with_capacity(grid.interior_len());
        for ex in &axis_eigs[0] {
            for ey in &axis_eigs[1] {
                for ez in &axis_eigs[2] {
                    eigenvalues.push(shift + alpha * (ex + ey + ez));
                }
            }
        }
        Ok(Self {
            grid: *grid,
            shift,
            alpha,
            eigenvalues,
            transform: CosineTransform::new(grid),
        })
    }

    /// Grid the plan was built for.
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Diagonal shift `s`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Diffusion coefficient `α`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Eigenvalues in compact mode order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalue of mode `p`.
    pub fn eigenvalue(&self, p: [usize; 3]) -> f64 {
        let n = [self.grid.n(0), self.grid.n(1), self.grid.n(2)];
        self.eigenvalues[(p[0] * n[1] + p[1]) * n[2] + p[2]]
    }

    /// Solves one scalar component.
    pub fn solve_scalar(&self, q: &ScalarField) -> Result<ScalarField> {
        if q.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut data = q.interior_values();
        self.transform.forward(&mut data);
        for (c, lam) in data.iter_mut().zip(&self.eigenvalues) {
            *c /= lam;
        }
        self.transform.inverse(&mut data);
        Ok(ScalarField::from_interior(self.grid, &data))
    }

    /// Solves `(s I - α Δ_h) u = q` per component; `u` is mirror-extended.
    pub fn solve(&self, q: &VectorField) -> Result<VectorField> {
        Ok(VectorField::from_components([
            self.solve_scalar(q.component(0))?,
            self.solve_scalar(q.component(1))?,
            self.solve_scalar(q.component(2))?,
        ]))
    }

    /// Applies `(s I - α Δ_h)` to a mirror-extended field. The result holds
    /// interior values and mirror-extended ghosts.
    pub fn apply(&self, u: &VectorField) -> VectorField {
        let lap = laplacian(u);
        let (s, a) = (self.shift, self.alpha);
        let mut out = VectorField::zeros(*u.grid());
        for k in u.grid().interior_offsets() {
            let x = u.at_offset(k);
            let l = lap.at_offset(k);
            out.set_offset(k, [s * x[0] - a * l[0], s * x[1] - a * l[1], s * x[2] - a * l[2]]);
        }
        out.extended()
    }
}

//! Stencil operators and discrete norms.
//!
//! All operators read the ghost layer, so inputs must be mirror-extended.
//! Weighted sums run over interior points only with weight `h_x h_y h_z`
//! (active axes), and are accumulated pairwise.

use alloc::vec;
use alloc::vec::Vec;

use crate::mesh::{GridSpec, ScalarField, VectorField};

/// Gradient of a vector field at interior points, stored as a 3x3 array per
/// point: `entry(axis, comp)` is the difference along `axis` of component
/// `comp`. Rows of degenerate axes are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    grid: GridSpec,
    entries: [[Vec<f64>; 3]; 3],
}

impl GradientField {
    fn zeros(grid: GridSpec) -> Self {
        let n = grid.interior_len();
        let row = || [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        Self {
            grid,
            entries: [row(), row(), row()],
        }
    }

    /// Grid the gradient was taken on.
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Compact interior array of `D_axis m_comp`.
    pub fn entry(&self, axis: usize, comp: usize) -> &[f64] {
        &self.entries[axis][comp]
    }

    /// The 3x3 array at compact interior position `p`, indexed `[axis][comp]`.
    pub fn at(&self, p: usize) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (a, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.entries[a][c][p];
            }
        }
        out
    }

    /// Squared Frobenius magnitude per interior point (compact order).
    pub fn frobenius_sq(&self) -> Vec<f64> {
        let n = self.grid.interior_len();
        (0..n)
            .map(|p| {
                let mut s = 0.0;
                for row in &self.entries {
                    for e in row {
                        s += e[p] * e[p];
                    }
                }
                s
            })
            .collect()
    }

    /// `‖∇f‖₂`.
    pub fn l2(&self) -> f64 {
        let w = self.grid.cell_volume();
        libm::sqrt(w * pairwise_sum(&self.frobenius_sq()))
    }

    /// `‖∇f‖₄` with the per-point Frobenius magnitude.
    pub fn l4(&self) -> f64 {
        let w = self.grid.cell_volume();
        let q: Vec<f64> = self.frobenius_sq().into_iter().map(|s| s * s).collect();
        libm::sqrt(libm::sqrt(w * pairwise_sum(&q)))
    }

    /// `‖∇f‖∞` with the per-point Frobenius magnitude.
    pub fn linf(&self) -> f64 {
        libm::sqrt(self.frobenius_sq().into_iter().fold(0.0, f64::max))
    }
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Centered Laplacian of a scalar field at interior points; ghosts of the
/// result are left at zero.
pub fn laplacian_scalar(f: &ScalarField) -> ScalarField {
    let g = *f.grid();
    let v = f.values();
    let mut out = ScalarField::zeros(g);
    let inv_h2: [f64; 3] = core::array::from_fn(|a| 1.0 / (g.h_axis(a) * g.h_axis(a)));
    let strides: [usize; 3] = core::array::from_fn(|a| g.stride(a));
    let dim = g.dim();
    let o = out.values_mut();
    for k in g.interior_offsets() {
        let mut s = 0.0;
        for a in 0..dim {
            let st = strides[a];
            s += (v[k + st] - 2.0 * v[k] + v[k - st]) * inv_h2[a];
        }
        o[k] = s;
    }
    out
}

/// `Δ_h m` component-wise.
pub fn laplacian(m: &VectorField) -> VectorField {
    VectorField::from_components([
        laplacian_scalar(m.component(0)),
        laplacian_scalar(m.component(1)),
        laplacian_scalar(m.component(2)),
    ])
}

/// Forward difference `(f_{i+1} - f_i) / h` along `axis` at interior points
/// (compact order). The last interior index reads the mirror ghost and yields 0.
pub fn forward_difference(f: &ScalarField, axis: usize) -> Vec<f64> {
    let g = f.grid();
    if !g.is_active(axis) {
        return vec![0.0; g.interior_len()];
    }
    let st = g.stride(axis);
    let inv_h = 1.0 / g.h_axis(axis);
    let v = f.values();
    g.interior_offsets().map(|k| (v[k + st] - v[k]) * inv_h).collect()
}

/// Forward gradient `∇_h m`.
pub fn forward_gradient(m: &VectorField) -> GradientField {
    let mut out = GradientField::zeros(*m.grid());
    for axis in 0..m.grid().dim() {
        for c in 0..3 {
            out.entries[axis][c] = forward_difference(m.component(c), axis);
        }
    }
    out
}

/// Backward average `(f_i + f_{i-1}) / 2` along `axis`, evaluated at every
/// stored point with index `>= 1` along that axis (including the upper
/// ghost). Index 0 keeps its input value.
pub fn backward_average(f: &ScalarField, axis: usize) -> ScalarField {
    let g = *f.grid();
    if !g.is_active(axis) {
        return f.clone();
    }
    let st = g.stride(axis);
    let mut out = f.clone();
    let v = f.values();
    let o = out.values_mut();
    for (k, ok) in o.iter_mut().enumerate() {
        if g.multi_index(k)[axis] >= 1 {
            *ok = 0.5 * (v[k] + v[k - st]);
        }
    }
    out
}

/// Averaged gradient `𝒜_h∇_h m = ∇_h 𝒜_h m`.
///
/// Row `axis` is the forward difference along `axis` of the field averaged
/// backward along the same axis, which collapses to the centered difference
/// `(m_{i+1} - m_{i-1}) / (2h)` with mirror ghosts.
pub fn averaged_gradient(m: &VectorField) -> GradientField {
    let mut out = GradientField::zeros(*m.grid());
    for axis in 0..m.grid().dim() {
        for c in 0..3 {
            let avg = backward_average(m.component(c), axis);
            out.entries[axis][c] = forward_difference(&avg, axis);
        }
    }
    out
}

/// Point-wise cross product `a x b` at every stored point. Mirror-extended
/// inputs give a mirror-extended result.
pub fn cross(a: &VectorField, b: &VectorField) -> VectorField {
    a.zip_map(b, cross3)
}

/// Cross product of two 3-vectors.
#[inline]
pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Dot product of two 3-vectors.
#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `|G|²` per interior point; ghosts mirror-extended.
pub fn grad_norm_sq(g: &GradientField) -> ScalarField {
    ScalarField::from_interior(g.grid, &g.frobenius_sq())
}

/// Discrete inner product `⟨f, g⟩ = h^d Σ f·g` over interior points.
pub fn inner(f: &VectorField, g: &VectorField) -> f64 {
    assert_eq!(f.grid(), g.grid(), "grid mismatch");
    let grid = f.grid();
    let terms: Vec<f64> = grid
        .interior_offsets()
        .map(|k| dot3(f.at_offset(k), g.at_offset(k)))
        .collect();
    grid.cell_volume() * pairwise_sum(&terms)
}

/// Discrete norms of a vector field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    /// `‖f‖₂`
    pub l2: f64,
    /// `‖f‖₄`
    pub l4: f64,
    /// `‖f‖∞`
    pub linf: f64,
    /// `‖f‖_{H¹} = (‖f‖₂² + ‖∇f‖₂²)^{1/2}`
    pub h1: f64,
    /// `‖∇f‖₂`
    pub gradient_l2: f64,
    /// `‖∇f‖₄`
    pub gradient_l4: f64,
    /// `‖∇f‖∞`
    pub gradient_linf: f64,
}

/// `‖f‖₂`.
pub fn l2(f: &VectorField) -> f64 {
    libm::sqrt(inner(f, f))
}

/// `‖f‖₄`.
pub fn l4(f: &VectorField) -> f64 {
    let g = f.grid();
    let q: Vec<f64> = g
        .interior_offsets()
        .map(|k| {
            let v = f.at_offset(k);
            let s = dot3(v, v);
            s * s
        })
        .collect();
    libm::sqrt(libm::sqrt(g.cell_volume() * pairwise_sum(&q)))
}

/// `‖f‖∞`.
pub fn linf(f: &VectorField) -> f64 {
    f.grid()
        .interior_offsets()
        .map(|k| {
            let v = f.at_offset(k);
            libm::sqrt(dot3(v, v))
        })
        .fold(0.0, f64::max)
}

/// All norms of `f` at once.
pub fn norms(f: &VectorField) -> Norms {
    let grad = forward_gradient(f);
    let l2v = l2(f);
    let gl2 = grad.l2();
    Norms {
        l2: l2v,
        l4: l4(f),
        linf: linf(f),
        h1: libm::sqrt(l2v * l2v + gl2 * gl2),
        gradient_l2: gl2,
        gradient_l4: grad.l4(),
        gradient_linf: grad.linf(),
    }
}

//! Cell-centered grids on the unit box with one mirror ghost layer per face.
//!
//! Interior point `i` along an active axis sits at `(i - 1/2) h` for
//! `i = 1..=N`; indices `0` and `N + 1` are ghosts. Axes beyond the spatial
//! dimension are degenerate: a single slot with index `0`, no ghosts and unit
//! weight.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Uniform cell-centered grid on `[0,1]^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    cells: [usize; 3],
    h: [f64; 3],
}

impl GridSpec {
    /// Builds a grid of dimension `dim` with the given per-axis cell counts.
    pub fn new(dim: usize, cells: &[usize]) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        if cells.len() != dim {
            return Err(Error::CellCountMismatch {
                dim,
                given: cells.len(),
            });
        }
        let mut n = [1usize; 3];
        let mut h = [1.0f64; 3];
        for (axis, &c) in cells.iter().enumerate() {
            if c < 2 {
                return Err(Error::TooFewCells { axis, cells: c });
            }
            n[axis] = c;
            h[axis] = 1.0 / c as f64;
        }
        Ok(Self { dim, cells: n, h })
    }

    /// Grid with `n` cells along every one of the `dim` axes.
    pub fn uniform(dim: usize, n: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        Self::new(dim, &[n, n, n][..dim])
    }

    /// Spatial dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cell counts of the active axes.
    pub fn cells(&self) -> &[usize] {
        &self.cells[..self.dim]
    }

    /// Cell count along `axis` (1 for degenerate axes).
    pub fn n(&self, axis: usize) -> usize {
        self.cells[axis]
    }

    /// Mesh sizes of the active axes.
    pub fn h(&self) -> &[f64] {
        &self.h[..self.dim]
    }

    /// Mesh size along `axis` (1 for degenerate axes).
    pub fn h_axis(&self, axis: usize) -> f64 {
        self.h[axis]
    }

    /// Smallest mesh size over the active axes.
    pub fn h_min(&self) -> f64 {
        self.h().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Whether `axis` is one of the first `dim` axes.
    pub fn is_active(&self, axis: usize) -> bool {
        axis < self.dim
    }

    /// Stored extent along `axis`, ghosts included.
    pub fn extent(&self, axis: usize) -> usize {
        if self.is_active(axis) {
            self.cells[axis] + 2
        } else {
            1
        }
    }

    /// Storage stride of `axis` in the row-major layout.
    pub fn stride(&self, axis: usize) -> usize {
        match axis {
            0 => self.extent(1) * self.extent(2),
            1 => self.extent(2),
            _ => 1,
        }
    }

    /// First interior index along `axis`.
    pub fn lo(&self, axis: usize) -> usize {
        usize::from(self.is_active(axis))
    }

    /// Last interior index along `axis`.
    pub fn hi(&self, axis: usize) -> usize {
        if self.is_active(axis) {
            self.cells[axis]
        } else {
            0
        }
    }

    /// Number of stored values per scalar field, ghosts included.
    pub fn storage_len(&self) -> usize {
        self.extent(0) * self.extent(1) * self.extent(2)
    }

    /// Number of interior points.
    pub fn interior_len(&self) -> usize {
        self.cells.iter().product()
    }

    /// Quadrature weight `h_x h_y h_z` of one interior point (active axes only).
    pub fn cell_volume(&self) -> f64 {
        self.h().iter().product()
    }

    /// Storage offset of multi-index `idx` (ghost-inclusive indices).
    #[inline]
    pub fn index(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.extent(1) + idx[1]) * self.extent(2) + idx[2]
    }

    /// Inverse of [`GridSpec::index`].
    pub fn multi_index(&self, offset: usize) -> [usize; 3] {
        let e1 = self.extent(1);
        let e2 = self.extent(2);
        [offset / (e1 * e2), (offset / e2) % e1, offset % e2]
    }

    /// Physical coordinate of a stored point. Degenerate axes report 0.
    pub fn coord(&self, idx: [usize; 3]) -> [f64; 3] {
        let mut x = [0.0; 3];
        for (axis, xa) in x.iter_mut().enumerate().take(self.dim) {
            *xa = (idx[axis] as f64 - 0.5) * self.h[axis];
        }
        x
    }

    /// Interior multi-indices in storage order.
    pub fn interior(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let (l0, h0) = (self.lo(0), self.hi(0));
        let (l1, h1) = (self.lo(1), self.hi(1));
        let (l2, h2) = (self.lo(2), self.hi(2));
        (l0..=h0).flat_map(move |i| (l1..=h1).flat_map(move |j| (l2..=h2).map(move |l| [i, j, l])))
    }

    /// Storage offsets of interior points in storage order.
    pub fn interior_offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.interior().map(move |idx| self.index(idx))
    }

    /// Position of an interior point in the compact (ghost-free) row-major layout.
    pub fn compact_index(&self, idx: [usize; 3]) -> usize {
        let c = |a: usize| idx[a] - self.lo(a);
        (c(0) * self.cells[1] + c(1)) * self.cells[2] + c(2)
    }
}

/// Real grid function over interior and ghost points.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    /// All-zero field.
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.storage_len()],
        }
    }

    /// Field with the same value at every stored point.
    pub fn constant(grid: GridSpec, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.storage_len()],
        }
    }

    /// Wraps raw storage. Panics if the length does not match the grid.
    pub fn from_storage(grid: GridSpec, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.storage_len(), "storage length mismatch");
        Self { grid, values }
    }

    /// Builds a field from interior values given in compact row-major order;
    /// ghosts are mirror-extended.
    pub fn from_interior(grid: GridSpec, interior: &[f64]) -> Self {
        assert_eq!(interior.len(), grid.interior_len(), "interior length mismatch");
        let mut f = Self::zeros(grid);
        for (idx, &v) in grid.interior().zip(interior) {
            f.values[grid.index(idx)] = v;
        }
        f.extend_neumann();
        f
    }

    /// Grid of this field.
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Raw storage, ghosts included.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mutable raw storage, ghosts included.
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Value at a multi-index.
    #[inline]
    pub fn at(&self, idx: [usize; 3]) -> f64 {
        self.values[self.grid.index(idx)]
    }

    /// Sets the value at a multi-index.
    #[inline]
    pub fn set(&mut self, idx: [usize; 3], v: f64) {
        let k = self.grid.index(idx);
        self.values[k] = v;
    }

    /// Interior values in compact row-major order.
    pub fn interior_values(&self) -> Vec<f64> {
        self.grid.interior_offsets().map(|k| self.values[k]).collect()
    }

    /// Fills the ghost layer by mirroring: `f_0 = f_1`, `f_{N+1} = f_N` per axis.
    ///
    /// Axes are processed in order, so edge and corner ghosts end up mirrored
    /// along every axis as well.
    pub fn extend_neumann(&mut self) {
        let g = self.grid;
        for axis in 0..g.dim() {
            let n = g.n(axis);
            let stride = g.stride(axis);
            for k in 0..g.storage_len() {
                let i = g.multi_index(k)[axis];
                if i == 0 {
                    self.values[k] = self.values[k + stride];
                } else if i == n + 1 {
                    self.values[k] = self.values[k - stride];
                }
            }
        }
    }

    /// Consuming variant of [`ScalarField::extend_neumann`].
    pub fn extended(mut self) -> Self {
        self.extend_neumann();
        self
    }
}

/// Three-component grid function (magnetization, intermediate field, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    comps: [ScalarField; 3],
}

impl VectorField {
    /// All-zero field.
    pub fn zeros(grid: GridSpec) -> Self {
        Self::from_components([
            ScalarField::zeros(grid),
            ScalarField::zeros(grid),
            ScalarField::zeros(grid),
        ])
    }

    /// Field equal to `v` at every stored point.
    pub fn uniform(grid: GridSpec, v: [f64; 3]) -> Self {
        Self::from_components([
            ScalarField::constant(grid, v[0]),
            ScalarField::constant(grid, v[1]),
            ScalarField::constant(grid, v[2]),
        ])
    }

    /// Assembles a vector field from components. Panics on grid mismatch.
    pub fn from_components(comps: [ScalarField; 3]) -> Self {
        assert!(
            comps[1].grid == comps[0].grid && comps[2].grid == comps[0].grid,
            "components must share one grid"
        );
        Self { comps }
    }

    /// Builds a field from a per-point rule evaluated at every interior
    /// multi-index, then mirror-extends the ghosts.
    pub fn from_interior_fn(grid: GridSpec, mut f: impl FnMut([usize; 3]) -> [f64; 3]) -> Self {
        let mut out = Self::zeros(grid);
        for idx in grid.interior() {
            out.set(idx, f(idx));
        }
        out.extend_neumann();
        out
    }

    /// Grid of this field.
    pub fn grid(&self) -> &GridSpec {
        &self.comps[0].grid
    }

    /// Component `c` (0, 1 or 2).
    pub fn component(&self, c: usize) -> &ScalarField {
        &self.comps[c]
    }

    /// Mutable component `c`.
    pub fn component_mut(&mut self, c: usize) -> &mut ScalarField {
        &mut self.comps[c]
    }

    /// All three components.
    pub fn components(&self) -> &[ScalarField; 3] {
        &self.comps
    }

    /// Vector value at a multi-index.
    #[inline]
    pub fn at(&self, idx: [usize; 3]) -> [f64; 3] {
        self.at_offset(self.grid().index(idx))
    }

    /// Vector value at a storage offset.
    #[inline]
    pub fn at_offset(&self, k: usize) -> [f64; 3] {
        [
            self.comps[0].values[k],
            self.comps[1].values[k],
            self.comps[2].values[k],
        ]
    }

    /// Sets the vector value at a multi-index.
    #[inline]
    pub fn set(&mut self, idx: [usize; 3], v: [f64; 3]) {
        let k = self.grid().index(idx);
        self.set_offset(k, v);
    }

    /// Sets the vector value at a storage offset.
    #[inline]
    pub fn set_offset(&mut self, k: usize, v: [f64; 3]) {
        for (c, comp) in self.comps.iter_mut().enumerate() {
            comp.values[k] = v[c];
        }
    }

    /// Mirror-extends all three components.
    pub fn extend_neumann(&mut self) {
        for c in &mut self.comps {
            c.extend_neumann();
        }
    }

    /// Consuming variant of [`VectorField::extend_neumann`].
    pub fn extended(mut self) -> Self {
        self.extend_neumann();
        self
    }

    /// Point-wise map over every stored point, ghosts included.
    pub fn map(&self, mut f: impl FnMut([f64; 3]) -> [f64; 3]) -> Self {
        let mut out = self.clone();
        for k in 0..self.grid().storage_len() {
            out.set_offset(k, f(self.at_offset(k)));
        }
        out
    }

    /// Point-wise combination of two fields over every stored point.
    pub fn zip_map(&self, other: &Self, mut f: impl FnMut([f64; 3], [f64; 3]) -> [f64; 3]) -> Self {
        assert_eq!(self.grid(), other.grid(), "grid mismatch");
        let mut out = self.clone();
        for k in 0..self.grid().storage_len() {
            out.set_offset(k, f(self.at_offset(k), other.at_offset(k)));
        }
        out
    }

    /// `a * self + b * other`, point-wise over all stored points.
    pub fn lincomb(&self, a: f64, other: &Self, b: f64) -> Self {
        self.zip_map(other, |x, y| {
            [a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2]]
        })
    }

    /// `s * self`.
    pub fn scaled(&self, s: f64) -> Self {
        self.map(|x| [s * x[0], s * x[1], s * x[2]])
    }

    /// Largest `| |m(x)| - 1 |` over interior points.
    pub fn unit_deviation(&self) -> f64 {
        self.grid()
            .interior_offsets()
            .map(|k| libm::fabs(norm3(self.at_offset(k)) - 1.0))
            .fold(0.0, f64::max)
    }

    /// Smallest and largest point-wise length over interior points.
    pub fn length_range(&self) -> (f64, f64) {
        self.grid()
            .interior_offsets()
            .map(|k| norm3(self.at_offset(k)))
            .fold((f64::INFINITY, 0.0), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }
}

/// Euclidean length of a 3-vector.
#[inline]
pub fn norm3(v: [f64; 3]) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

/// Point-wise interpolation of a closed-form field `f(x, t)` onto the grid.
pub fn sample_on_grid(grid: &GridSpec, t: f64, f: impl Fn([f64; 3], f64) -> [f64; 3]) -> VectorField {
    VectorField::from_interior_fn(*grid, |idx| f(grid.coord(idx), t))
}

/// Fallible variant of [`sample_on_grid`]; the first evaluation error aborts.
pub fn try_sample_on_grid<E>(
    grid: &GridSpec,
    t: f64,
    f: impl Fn([f64; 3], f64) -> core::result::Result<[f64; 3], E>,
) -> core::result::Result<VectorField, E> {
    let mut out = VectorField::zeros(*grid);
    for idx in grid.interior() {
        out.set(idx, f(grid.coord(idx), t)?);
    }
    out.extend_neumann();
    Ok(out)
}

//! Dense-matrix oracles assembled point by point from the stencil
//! definitions, independent of the crate's stencil loops and transforms.
#![allow(dead_code)]

use llbdf2_core::mesh::{GridSpec, VectorField};
use llbdf2_core::ops::cross3;
use nalgebra::{DMatrix, DVector};

/// Interior multi-indices in compact order, computed without the crate's helpers.
pub fn points(grid: &GridSpec) -> Vec<[usize; 3]> {
    let n: [usize; 3] = std::array::from_fn(|a| if a < grid.dim() { grid.n(a) } else { 1 });
    let mut out = Vec::new();
    for i in 0..n[0] {
        for j in 0..n[1] {
            for l in 0..n[2] {
                out.push([i, j, l]);
            }
        }
    }
    out
}

fn position(grid: &GridSpec, p: [usize; 3]) -> usize {
    let n: [usize; 3] = std::array::from_fn(|a| if a < grid.dim() { grid.n(a) } else { 1 });
    (p[0] * n[1] + p[1]) * n[2] + p[2]
}

/// Neighbor of compact point `p` along `axis`, mirrored back inside when it
/// would leave the box.
fn neighbor(grid: &GridSpec, p: [usize; 3], axis: usize, up: bool) -> usize {
    let mut q = p;
    if up {
        if q[axis] + 1 < grid.n(axis) {
            q[axis] += 1;
        }
    } else if q[axis] > 0 {
        q[axis] -= 1;
    }
    position(grid, q)
}

/// Mirror-Neumann Laplacian.
pub fn laplacian_matrix(grid: &GridSpec) -> DMatrix<f64> {
    let pts = points(grid);
    let n = pts.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (r, &p) in pts.iter().enumerate() {
        for axis in 0..grid.dim() {
            let w = 1.0 / (grid.h_axis(axis) * grid.h_axis(axis));
            m[(r, r)] -= 2.0 * w;
            m[(r, neighbor(grid, p, axis, true))] += w;
            m[(r, neighbor(grid, p, axis, false))] += w;
        }
    }
    m
}

/// Forward difference along `axis` with the mirror ghost.
pub fn forward_matrix(grid: &GridSpec, axis: usize) -> DMatrix<f64> {
    let pts = points(grid);
    let n = pts.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    let w = 1.0 / grid.h_axis(axis);
    for (r, &p) in pts.iter().enumerate() {
        m[(r, neighbor(grid, p, axis, true))] += w;
        m[(r, r)] -= w;
    }
    m
}

/// Backward average along `axis` as an operator from interior values to the
/// `N + 1` averaged values `(u_i + u_{i-1})/2, i = 1..=N+1` (mirror ghosts).
/// Returned together with the forward difference acting on those values, so
/// their product is the averaged-gradient row.
pub fn averaged_gradient_matrix(grid: &GridSpec, axis: usize) -> DMatrix<f64> {
    let pts = points(grid);
    let n = pts.len();
    let na = grid.n(axis);
    // extended index along `axis`: 0..=na (averaged values at i = 1..=N+1)
    let ext: Vec<[usize; 3]> = {
        let mut v = Vec::new();
        let dims: [usize; 3] = std::array::from_fn(|a| {
            if a == axis {
                na + 1
            } else if a < grid.dim() {
                grid.n(a)
            } else {
                1
            }
        });
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for l in 0..dims[2] {
                    v.push([i, j, l]);
                }
            }
        }
        v
    };
    let ext_pos = |p: [usize; 3]| ext.iter().position(|&q| q == p).unwrap();
    let clamp = |p: [usize; 3], i: isize| -> usize {
        let mut q = p;
        q[axis] = i.clamp(0, na as isize - 1) as usize;
        position(grid, q)
    };
    let mut avg = DMatrix::<f64>::zeros(ext.len(), n);
    for (r, &p) in ext.iter().enumerate() {
        // averaged value at storage index i = p[axis] + 1 uses u_i and u_{i-1}
        let i = p[axis] as isize;
        avg[(r, clamp(p, i))] += 0.5;
        avg[(r, clamp(p, i - 1))] += 0.5;
    }
    let mut diff = DMatrix::<f64>::zeros(n, ext.len());
    let w = 1.0 / grid.h_axis(axis);
    for (r, &p) in pts.iter().enumerate() {
        let mut up = p;
        up[axis] += 1;
        diff[(r, ext_pos(up))] += w;
        diff[(r, ext_pos(p))] -= w;
    }
    diff * avg
}

/// Component `c` of a field as a dense vector in compact order.
pub fn component(f: &VectorField, c: usize) -> DVector<f64> {
    let g = f.grid();
    DVector::from_iterator(
        points(g).len(),
        points(g)
            .into_iter()
            .map(|p| f.component(c).at(std::array::from_fn(|a| p[a] + g.lo(a)))),
    )
}

/// Per-point 3-vectors of a field in compact order.
pub fn vectors(f: &VectorField) -> Vec<[f64; 3]> {
    let cs: [DVector<f64>; 3] = std::array::from_fn(|c| component(f, c));
    (0..cs[0].len()).map(|i| [cs[0][i], cs[1][i], cs[2][i]]).collect()
}

/// Field from per-point vectors in compact order.
pub fn field(grid: &GridSpec, v: &[[f64; 3]]) -> VectorField {
    let mut it = v.iter();
    VectorField::from_interior_fn(*grid, |_| *it.next().unwrap())
}

/// Applies a scalar matrix to every component.
pub fn apply(m: &DMatrix<f64>, v: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let cs: [DVector<f64>; 3] = std::array::from_fn(|c| m * DVector::from_iterator(v.len(), v.iter().map(|x| x[c])));
    (0..v.len()).map(|i| [cs[0][i], cs[1][i], cs[2][i]]).collect()
}

/// Dense solve of `(shift I - α L) x = q` per component.
pub fn dense_solve(grid: &GridSpec, shift: f64, alpha: f64, q: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let n = q.len();
    let a = DMatrix::identity(n, n) * shift - laplacian_matrix(grid) * alpha;
    let lu = a.lu();
    let cs: [DVector<f64>; 3] = std::array::from_fn(|c| {
        lu.solve(&DVector::from_iterator(n, q.iter().map(|x| x[c])))
            .expect("positive-definite system")
    });
    (0..n).map(|i| [cs[0][i], cs[1][i], cs[2][i]]).collect()
}

/// `|𝒜_h∇_h m|²` from the dense averaged-gradient matrices.
pub fn averaged_grad_sq(grid: &GridSpec, m: &[[f64; 3]]) -> Vec<f64> {
    let mut out = vec![0.0; m.len()];
    for axis in 0..grid.dim() {
        let d = apply(&averaged_gradient_matrix(grid, axis), m);
        for (o, v) in out.iter_mut().zip(&d) {
            *o += v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        }
    }
    out
}

/// Explicit part `-a × Δ b + α|𝒜∇a|² a` assembled term by term.
pub fn explicit_terms(grid: &GridSpec, alpha: f64, a: &[[f64; 3]], b: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let lap_b = apply(&laplacian_matrix(grid), b);
    let g2 = averaged_grad_sq(grid, a);
    (0..a.len())
        .map(|i| {
            let gy = cross3(a[i], lap_b[i]);
            std::array::from_fn(|c| -gy[c] + alpha * g2[i] * a[i][c])
        })
        .collect()
}

/// Point-wise normalization.
pub fn normalize(v: &[[f64; 3]]) -> Vec<[f64; 3]> {
    v.iter()
        .map(|x| {
            let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
            [x[0] / n, x[1] / n, x[2] / n]
        })
        .collect()
}

/// `(m̃^n, m̃^{n+1})` as point lists.
pub type History<'a> = (&'a [[f64; 3]], &'a [[f64; 3]]);

/// One BDF2 step by dense assembly. `tilde` carries `(m̃^n, m̃^{n+1})` for the
/// intermediate-history variant; `forcing` is the sampled source at `t^{n+2}`.
pub fn dense_bdf2_step(
    grid: &GridSpec,
    alpha: f64,
    k: f64,
    prev: &[[f64; 3]],
    curr: &[[f64; 3]],
    tilde: Option<History<'_>>,
    forcing: Option<&[[f64; 3]]>,
) -> (Vec<[f64; 3]>, Vec<[f64; 3]>) {
    let n = prev.len();
    let ext = |a: &[[f64; 3]], b: &[[f64; 3]]| -> Vec<[f64; 3]> {
        (0..n)
            .map(|i| std::array::from_fn(|c| 2.0 * a[i][c] - b[i][c]))
            .collect()
    };
    let hat = ext(curr, prev);
    let (h1, h0, lap_arg) = match tilde {
        Some((t0, t1)) => (t1, t0, ext(t1, t0)),
        None => (curr, prev, hat.clone()),
    };
    let expl = explicit_terms(grid, alpha, &hat, &lap_arg);
    let q: Vec<[f64; 3]> = (0..n)
        .map(|i| {
            std::array::from_fn(|c| {
                (2.0 * h1[i][c] - 0.5 * h0[i][c]) / k + expl[i][c] + forcing.map_or(0.0, |f| f[i][c])
            })
        })
        .collect();
    let tilde_new = dense_solve(grid, 1.5 / k, alpha, &q);
    let m_new = normalize(&tilde_new);
    (tilde_new, m_new)
}

/// Start-up step by dense assembly.
pub fn dense_first_step(
    grid: &GridSpec,
    alpha: f64,
    k: f64,
    m0: &[[f64; 3]],
    forcing: Option<&[[f64; 3]]>,
) -> (Vec<[f64; 3]>, Vec<[f64; 3]>) {
    let expl = explicit_terms(grid, alpha, m0, m0);
    let q: Vec<[f64; 3]> = (0..m0.len())
        .map(|i| std::array::from_fn(|c| m0[i][c] / k + expl[i][c] + forcing.map_or(0.0, |f| f[i][c])))
        .collect();
    let tilde = dense_solve(grid, 1.0 / k, alpha, &q);
    let m = normalize(&tilde);
    (tilde, m)
}

/// Largest absolute entry difference.
pub fn max_diff(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| (0..3).map(move |c| (x[c] - y[c]).abs()))
        .fold(0.0, f64::max)
}

/// Largest absolute entry.
pub fn max_abs(a: &[[f64; 3]]) -> f64 {
    a.iter().flat_map(|x| x.iter().map(|v| v.abs())).fold(0.0, f64::max)
}

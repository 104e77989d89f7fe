//! Fuzz suites for the discrete inequalities the convergence argument rests
//! on. Every routine is deterministic in its seed.
//!
//! Slack is `rhs - lhs`; a non-negative worst slack means the inequality held
//! on every trial. Constants that are only known to exist are fitted on a
//! separate corpus (max observed ratio times [`FIT_MARGIN`]) and then frozen.

use alloc::vec::Vec;

use libm::{pow, sqrt};
use rand::Rng;

use crate::mesh::{GridSpec, VectorField};
use crate::ops::{cross, dot3, forward_gradient, inner, l2, l4, laplacian, linf, pairwise_sum};
use crate::stepper::project;
use crate::verify::random::{self, FuzzRng};

/// Safety factor applied to fitted constants.
pub const FIT_MARGIN: f64 = 1.05;

/// Tolerance on the relative defect of exact identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// `δ` used for every inequality of the form `(1 + δ) A + C_δ B`.
pub const DELTA: f64 = 1.0;

/// `C_δ = 3 + 9/δ` of the cross-product gradient estimate.
pub const CROSS_GRADIENT_C: f64 = 3.0 + 9.0 / DELTA;

/// `2(1 + 1/δ)`: the projection gradient estimate uses
/// `C_δ = PROJECTION_GRAD_C · (1 + ‖∇_h m_e‖∞²)`, the size of the term in which
/// the slope of `m_e` multiplies `ẽ`.
pub const PROJECTION_GRAD_C: f64 = 2.0 * (1.0 + 1.0 / DELTA);

/// Outcome of one fuzz suite.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    /// Short identifier, e.g. `cross_gradient`.
    pub lemma: &'static str,
    /// Number of trials checked.
    pub trials: usize,
    /// Trials where the inequality (or identity) failed.
    pub violations: usize,
    /// Smallest `rhs - lhs` seen.
    pub worst_slack: f64,
    /// Constant the inequality was checked with, for suites that carry one.
    pub constant: Option<f64>,
    /// Time step the suite ran at, where relevant.
    pub k: Option<f64>,
    /// Largest relative defect of an accompanying identity, where relevant.
    pub identity_defect: Option<f64>,
}

impl LemmaReport {
    fn new(lemma: &'static str) -> Self {
        Self {
            lemma,
            trials: 0,
            violations: 0,
            worst_slack: f64::INFINITY,
            constant: None,
            k: None,
            identity_defect: None,
        }
    }

    fn record(&mut self, lhs: f64, rhs: f64) {
        self.trials += 1;
        let slack = rhs - lhs;
        if !(slack >= 0.0) {
            self.violations += 1;
        }
        self.worst_slack = self.worst_slack.min(slack);
    }

    /// Zero violations.
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Combines two reports of the same suite.
    pub fn merge(mut self, other: &Self) -> Self {
        self.trials += other.trials;
        self.violations += other.violations;
        self.worst_slack = self.worst_slack.min(other.worst_slack);
        self.identity_defect = match (self.identity_defect, other.identity_defect) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn mix(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Relative defect of `⟨f × Δ_h g, F⟩ = ⟨F × f, Δ_h g⟩`.
pub fn adjoint_defect(f: &VectorField, g: &VectorField, big_f: &VectorField) -> f64 {
    let lap = laplacian(g);
    let lhs = inner(&cross(f, &lap), big_f);
    let rhs = inner(&cross(big_f, f), &lap);
    let grid = f.grid();
    let scale: Vec<f64> = grid
        .interior_offsets()
        .map(|k| {
            let n = |v: [f64; 3]| sqrt(dot3(v, v));
            n(f.at_offset(k)) * n(lap.at_offset(k)) * n(big_f.at_offset(k))
        })
        .collect();
    let scale = grid.cell_volume() * pairwise_sum(&scale);
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// `(lhs, rhs)` of `‖∇_h(f×g)‖₂² ≤ (1+δ)‖f‖∞²‖∇_h g‖₂² + C_δ‖g‖₄²‖∇_h f‖₄²`.
pub fn cross_gradient_sides(f: &VectorField, g: &VectorField) -> (f64, f64) {
    let lhs = forward_gradient(&cross(f, g)).l2();
    let gf = forward_gradient(f);
    let gg = forward_gradient(g);
    let (fi, ggl2, g4, gf4) = (linf(f), gg.l2(), l4(g), gf.l4());
    (
        lhs * lhs,
        (1.0 + DELTA) * fi * fi * ggl2 * ggl2 + CROSS_GRADIENT_C * g4 * g4 * gf4 * gf4,
    )
}

fn cross_pair(grid: &GridSpec, rng: &mut FuzzRng, i: usize) -> (VectorField, VectorField) {
    let amp = |rng: &mut FuzzRng| pow(10.0, rng.gen_range(-1.0..1.0));
    let (f, g) = match i % 5 {
        0 => (
            random::smooth_vector(grid, rng, 1.0),
            random::smooth_vector(grid, rng, 1.0),
        ),
        1 => (random::white_noise(grid, rng), random::smooth_vector(grid, rng, 1.0)),
        2 => (random::smooth_vector(grid, rng, 2.0), random::white_noise(grid, rng)),
        3 => (random::smooth_unit(grid, rng), random::smooth_unit(grid, rng)),
        _ => (
            random::smooth_vector(grid, rng, 0.5),
            random::smooth_vector(grid, rng, 0.5),
        ),
    };
    (f.scaled(amp(rng)), g.scaled(amp(rng)))
}

/// Cross-product suite: the summation-by-parts identity to
/// [`IDENTITY_TOL`] and the gradient bound with `δ = 1, C_δ = 12`.
pub fn check_cross_gradient(trials: usize, grid: &GridSpec, seed: u64) -> LemmaReport {
    let mut rng = random::rng(seed);
    let mut rep = LemmaReport::new("cross_gradient");
    let mut worst_defect: f64 = 0.0;
    for i in 0..trials {
        let (f, g) = cross_pair(grid, &mut rng, i);
        let big_f = random::smooth_vector(grid, &mut rng, 1.0);
        let defect = adjoint_defect(&f, &g, &big_f);
        worst_defect = worst_defect.max(defect);
        let (lhs, rhs) = cross_gradient_sides(&f, &g);
        rep.record(lhs, rhs);
        if !(defect <= IDENTITY_TOL) && rhs >= lhs {
            rep.violations += 1;
        }
    }
    rep.identity_defect = Some(worst_defect);
    rep
}

/// One admissible projection trial: exact field, perturbation and the
/// resulting projected error.
#[derive(Debug, Clone)]
pub struct ProjectionTrial {
    /// `𝒫_h m_e`
    pub exact: VectorField,
    /// `ẽ = 𝒫_h m_e - m̃`
    pub e_tilde: VectorField,
    /// `e = 𝒫_h m_e - m̃/|m̃|`
    pub e: VectorField,
}

impl ProjectionTrial {
    /// Builds the trial from an exact field and a perturbation.
    pub fn new(exact: VectorField, e_tilde: VectorField) -> Self {
        let m_tilde = exact.lincomb(1.0, &e_tilde, -1.0);
        let m = project(&m_tilde).expect("admissible perturbations keep |m~| near 1");
        let e = exact.lincomb(1.0, &m, -1.0);
        Self { exact, e_tilde, e }
    }
}

/// Random perturbation rescaled into `‖ẽ‖₂ ≤ 2k^{15/8}`, `‖∇_h ẽ‖₂ ≤ ½k^{11/8}`.
pub fn admissible_perturbation(exact: &VectorField, k: f64, rng: &mut FuzzRng, kind: usize) -> VectorField {
    let grid = exact.grid();
    let raw = match kind % 3 {
        0 => {
            let decay = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
            random::smooth_vector(grid, rng, decay)
        }
        1 => {
            // pure length change along m_e
            let rho = random::smooth_scalar(grid, rng, 1.0);
            let mut out = exact.clone();
            for k in 0..grid.storage_len() {
                let r = rho.values()[k];
                let v = exact.at_offset(k);
                out.set_offset(k, [r * v[0], r * v[1], r * v[2]]);
            }
            out
        }
        _ => {
            // tangential part only
            let d = random::smooth_vector(grid, rng, 1.0);
            let mut out = d.clone();
            for k in 0..grid.storage_len() {
                let (v, m) = (d.at_offset(k), exact.at_offset(k));
                let s = dot3(v, m);
                out.set_offset(k, [v[0] - s * m[0], v[1] - s * m[1], v[2] - s * m[2]]);
            }
            out
        }
    };
    let n2 = l2(&raw);
    let ng = forward_gradient(&raw).l2();
    let mut scale = 2.0 * pow(k, 15.0 / 8.0) / n2.max(f64::MIN_POSITIVE);
    if ng > 0.0 {
        scale = scale.min(0.5 * pow(k, 11.0 / 8.0) / ng);
    }
    let u = 1.0 - 0.9 * rng.gen::<f64>();
    raw.scaled(scale * u)
}

/// `(lhs, rhs)` of `‖ẽ‖₂² ≥ (1-k^{5/4})‖e‖₂² + (1-k^{1/4})‖ẽ-e‖₂²`, written as
/// `lhs ≤ rhs` with `rhs = ‖ẽ‖₂²`.
pub fn projection_l2_sides(t: &ProjectionTrial, k: f64) -> (f64, f64) {
    let e2 = l2(&t.e);
    let d2 = l2(&t.e_tilde.lincomb(1.0, &t.e, -1.0));
    let et = l2(&t.e_tilde);
    ((1.0 - pow(k, 1.25)) * e2 * e2 + (1.0 - pow(k, 0.25)) * d2 * d2, et * et)
}

/// Weight `1 + ‖∇_h 𝒫_h m_e‖∞²` carried by the projection `C_δ`.
pub fn gradient_weight(exact: &VectorField) -> f64 {
    let g = forward_gradient(exact).linf();
    1.0 + g * g
}

/// Ratio `(‖∇_h e‖₂² - (1+δ)‖∇_h ẽ‖₂²) / ((1 + ‖∇_h m_e‖∞²)‖ẽ‖₂²)` whose
/// supremum is the normalized `C_δ`.
pub fn projection_grad_ratio(t: &ProjectionTrial) -> f64 {
    let ge = forward_gradient(&t.e).l2();
    let gt = forward_gradient(&t.e_tilde).l2();
    let et = l2(&t.e_tilde);
    if et == 0.0 {
        return 0.0;
    }
    (ge * ge - (1.0 + DELTA) * gt * gt) / (gradient_weight(&t.exact) * et * et)
}

fn projection_trial(grid: &GridSpec, k: f64, rng: &mut FuzzRng, i: usize) -> ProjectionTrial {
    let exact = random::smooth_unit(grid, rng);
    let e_tilde = admissible_perturbation(&exact, k, rng, i);
    ProjectionTrial::new(exact, e_tilde)
}

/// Projection-stability suite at time step `k`. Returns the `ℓ²` report and
/// the gradient report, the latter checked with
/// `C_δ = PROJECTION_GRAD_C · (1 + ‖∇_h m_e‖∞²)`.
pub fn check_projection_stability(trials: usize, grid: &GridSpec, k: f64, seed: u64) -> (LemmaReport, LemmaReport) {
    let mut rng = random::rng(mix(seed, 2));
    let mut l2_rep = LemmaReport::new("projection_stability_l2");
    let mut grad_rep = LemmaReport::new("projection_stability_grad");
    for i in 0..trials {
        let t = projection_trial(grid, k, &mut rng, i);
        let (lhs, rhs) = projection_l2_sides(&t, k);
        l2_rep.record(lhs, rhs);
        let ge = forward_gradient(&t.e).l2();
        let gt = forward_gradient(&t.e_tilde).l2();
        let et = l2(&t.e_tilde);
        let c_delta = PROJECTION_GRAD_C * gradient_weight(&t.exact);
        grad_rep.record(ge * ge, (1.0 + DELTA) * gt * gt + c_delta * et * et);
    }
    l2_rep.k = Some(k);
    grad_rep.k = Some(k);
    grad_rep.constant = Some(PROJECTION_GRAD_C);
    (l2_rep, grad_rep)
}

/// Second unit field within `‖m⁽¹⁾ - m⁽²⁾‖∞ ≤ ¼k^{7/8}` of `m1`.
pub fn nearby_unit(m1: &VectorField, k: f64, rng: &mut FuzzRng) -> VectorField {
    let grid = m1.grid();
    let bound = 0.25 * pow(k, 7.0 / 8.0);
    let d = random::smooth_vector(grid, rng, 1.0);
    let mut amp = bound * (1.0 - 0.9 * rng.gen::<f64>()) / linf(&d).max(f64::MIN_POSITIVE);
    loop {
        let m2 = project(&m1.lincomb(1.0, &d, amp)).expect("small shift keeps the field away from zero");
        if linf(&m1.lincomb(1.0, &m2, -1.0)) <= bound {
            return m2;
        }
        amp *= 0.5;
    }
}

/// `(lhs, rhs)` of `|⟨ẽ⁽¹⁾ - e⁽¹⁾, e⁽²⁾⟩| ≤ k^{5/4}‖e⁽²⁾‖₂² + k^{1/4}‖ẽ⁽¹⁾ - e⁽¹⁾‖₂²`.
pub fn two_level_sides(t1: &ProjectionTrial, t2: &ProjectionTrial, k: f64) -> (f64, f64) {
    let d1 = t1.e_tilde.lincomb(1.0, &t1.e, -1.0);
    let lhs = inner(&d1, &t2.e).abs();
    let e2 = l2(&t2.e);
    let dn = l2(&d1);
    (lhs, pow(k, 1.25) * e2 * e2 + pow(k, 0.25) * dn * dn)
}

/// Two-level projection suite at time step `k`.
pub fn check_two_level_projection(trials: usize, grid: &GridSpec, k: f64, seed: u64) -> LemmaReport {
    let mut rng = random::rng(seed);
    let mut rep = LemmaReport::new("two_level_projection");
    for i in 0..trials {
        let m1 = random::smooth_unit(grid, &mut rng);
        let m2 = nearby_unit(&m1, k, &mut rng);
        let p1 = admissible_perturbation(&m1, k, &mut rng, i);
        let p2 = admissible_perturbation(&m2, k, &mut rng, i / 3);
        let t1 = ProjectionTrial::new(m1, p1);
        let t2 = ProjectionTrial::new(m2, p2);
        let (lhs, rhs) = two_level_sides(&t1, &t2, k);
        rep.record(lhs, rhs);
    }
    rep.k = Some(k);
    rep
}

/// Required `γ` for `‖f‖∞ ≤ γ h^{-1/2}(‖f‖₂ + ‖∇_h f‖₂)` and
/// `‖∇_h f‖₄ ≤ γ h^{-3/4}‖∇_h f‖₂` (three-dimensional exponents); the larger
/// of the two ratios.
pub fn inverse_ratio(f: &VectorField) -> f64 {
    let h = f.grid().h_min();
    let g = forward_gradient(f);
    let (n2, ninf, g2, g4) = (l2(f), linf(f), g.l2(), g.l4());
    let r1 = if n2 + g2 > 0.0 { ninf * sqrt(h) / (n2 + g2) } else { 0.0 };
    let r2 = if g2 > 0.0 { g4 * pow(h, 0.75) / g2 } else { 0.0 };
    r1.max(r2)
}

/// Required `C` for `‖f‖₄ ≤ C(‖f‖₂ + ‖f‖₂^{1/4}‖∇_h f‖₂^{3/4})`.
pub fn sobolev_ratio(f: &VectorField) -> f64 {
    let (n2, n4) = (l2(f), l4(f));
    let g2 = forward_gradient(f).l2();
    let rhs = n2 + pow(n2, 0.25) * pow(g2, 0.75);
    if rhs > 0.0 {
        n4 / rhs
    } else {
        0.0
    }
}

/// Inverse and Sobolev suites: constants fitted on the first grid's corpus,
/// then frozen and checked on fresh corpora for the remaining grids.
pub fn check_inverse_and_sobolev(trials: usize, grids: &[GridSpec], seed: u64) -> (LemmaReport, LemmaReport) {
    assert!(grids.len() >= 2, "need a fitting grid and at least one test grid");
    let mut fit_rng = random::rng(mix(seed, 3));
    let mut gamma: f64 = 0.0;
    let mut c: f64 = 0.0;
    for f in random::mixed_corpus(&grids[0], &mut fit_rng, trials) {
        gamma = gamma.max(inverse_ratio(&f));
        c = c.max(sobolev_ratio(&f));
    }
    gamma *= FIT_MARGIN;
    c *= FIT_MARGIN;

    let mut inv = LemmaReport::new("inverse");
    let mut sob = LemmaReport::new("sobolev");
    for (gi, grid) in grids.iter().enumerate().skip(1) {
        let mut rng = random::rng(mix(seed, 10 + gi as u64));
        for f in random::mixed_corpus(grid, &mut rng, trials) {
            let r = inverse_ratio(&f);
            inv.record(r, gamma);
            sob.record(sobolev_ratio(&f), c);
        }
    }
    inv.constant = Some(gamma);
    sob.constant = Some(c);
    (inv, sob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{forward_difference, forward_gradient};

    fn g8() -> GridSpec {
        GridSpec::uniform(3, 8).unwrap()
    }

    #[test]
    fn cross_gradient_with_constant_factor() {
        let g = g8();
        let mut rng = random::rng(1);
        let f = VectorField::uniform(g, [0.3, -0.4, 1.2]);
        let gv = random::smooth_vector(&g, &mut rng, 1.0);
        let lhs = forward_gradient(&cross(&f, &gv)).l2();
        let fi = linf(&f);
        let gg = forward_gradient(&gv).l2();
        // |f × D g| ≤ |f||D g| point-wise
        assert!(lhs * lhs <= fi * fi * gg * gg * (1.0 + 1e-12));
        let (l, r) = cross_gradient_sides(&f, &gv);
        assert!(r >= l);
        let (l, r) = cross_gradient_sides(&gv, &f);
        assert!(r >= l);
    }

    #[test]
    fn product_rule_expansion() {
        // D_x(f×g) = (A_x f)×(D_x g) + (D_x f)×(A_x g), A_x the forward average
        let g = GridSpec::new(3, &[4, 5, 3]).unwrap();
        let mut rng = random::rng(2);
        let f = random::white_noise(&g, &mut rng);
        let h = random::white_noise(&g, &mut rng);
        let fxh = cross(&f, &h);
        for axis in 0..3 {
            let st = g.stride(axis);
            let lhs: [Vec<f64>; 3] = core::array::from_fn(|c| forward_difference(fxh.component(c), axis));
            let df: [Vec<f64>; 3] = core::array::from_fn(|c| forward_difference(f.component(c), axis));
            let dh: [Vec<f64>; 3] = core::array::from_fn(|c| forward_difference(h.component(c), axis));
            for (p, k) in g.interior_offsets().enumerate() {
                let avg = |v: &VectorField| -> [f64; 3] {
                    let (a, b) = (v.at_offset(k), v.at_offset(k + st));
                    core::array::from_fn(|c| 0.5 * (a[c] + b[c]))
                };
                let dfp = [df[0][p], df[1][p], df[2][p]];
                let dhp = [dh[0][p], dh[1][p], dh[2][p]];
                let t1 = crate::ops::cross3(avg(&f), dhp);
                let t2 = crate::ops::cross3(dfp, avg(&h));
                for c in 0..3 {
                    assert!((lhs[c][p] - t1[c] - t2[c]).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn laplacian_symmetric_and_nonpositive() {
        let g = GridSpec::new(3, &[5, 4, 6]).unwrap();
        let mut rng = random::rng(3);
        let f = random::white_noise(&g, &mut rng);
        let h = random::white_noise(&g, &mut rng);
        let a = inner(&laplacian(&f), &h);
        let b = inner(&f, &laplacian(&h));
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        assert!(inner(&laplacian(&f), &f) <= 0.0);
        // summation by parts: ⟨Δ_h f, f⟩ = -‖∇_h f‖₂²
        let gn = forward_gradient(&f).l2();
        assert!((inner(&laplacian(&f), &f) + gn * gn).abs() < 1e-10 * gn * gn);
    }

    #[test]
    fn cross_suite_small() {
        let rep = check_cross_gradient(50, &g8(), 11);
        assert_eq!(rep.trials, 50);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.identity_defect.unwrap() <= IDENTITY_TOL);
    }

    #[test]
    fn zero_perturbation_is_trivial() {
        let g = GridSpec::uniform(3, 8).unwrap();
        let exact = random::smooth_unit(&g, &mut random::rng(4));
        let t = ProjectionTrial::new(exact, VectorField::zeros(g));
        // renormalizing an already-unit field only moves it by round-off
        assert!(l2(&t.e) < 1e-15);
        let (l, r) = projection_l2_sides(&t, 0.05);
        assert_eq!(r, 0.0);
        assert!(l < 1e-30);
        let t2 = t.clone();
        let (l, r) = two_level_sides(&t, &t2, 0.05);
        assert!(l < 1e-30 && r < 1e-30);
    }

    #[test]
    fn pure_length_perturbation() {
        let g = GridSpec::uniform(3, 8).unwrap();
        let exact = random::smooth_unit(&g, &mut random::rng(5));
        let k: f64 = 0.05;
        let e_tilde = exact.scaled(0.5 * pow(k, 2.0));
        let t = ProjectionTrial::new(exact, e_tilde);
        assert!(l2(&t.e) < 1e-14);
        let (l, r) = projection_l2_sides(&t, k);
        let d = l2(&t.e_tilde);
        assert!((l - (1.0 - pow(k, 0.25)) * d * d).abs() < 1e-18);
        assert!(r >= l);
    }

    #[test]
    fn admissible_perturbations_respect_bounds() {
        let g = GridSpec::uniform(3, 16).unwrap();
        let mut rng = random::rng(6);
        let k: f64 = 0.05;
        for i in 0..12 {
            let exact = random::smooth_unit(&g, &mut rng);
            let p = admissible_perturbation(&exact, k, &mut rng, i);
            assert!(l2(&p) <= 2.0 * pow(k, 15.0 / 8.0) * (1.0 + 1e-12));
            assert!(forward_gradient(&p).l2() <= 0.5 * pow(k, 11.0 / 8.0) * (1.0 + 1e-12));
            let m2 = nearby_unit(&exact, k, &mut rng);
            assert!(linf(&exact.lincomb(1.0, &m2, -1.0)) <= 0.25 * pow(k, 7.0 / 8.0));
            assert!(m2.unit_deviation() < 1e-14);
        }
    }

    #[test]
    fn constant_field_inverse_ratio() {
        let g = g8();
        let f = VectorField::uniform(g, [1.0, 2.0, 2.0]);
        assert!((linf(&f) - l2(&f)).abs() < 1e-14);
        assert!((inverse_ratio(&f) - sqrt(g.h_min())).abs() < 1e-14);
    }

    #[test]
    fn spike_family_saturates_inverse_scaling() {
        let ratios: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| {
                let g = GridSpec::uniform(3, n).unwrap();
                inverse_ratio(&random::spike(&g, [n / 2, n / 2, n / 2], [0.0, 0.0, 1.0]))
            })
            .collect();
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(0.0, f64::max);
        assert!(lo > 0.3 && hi / lo < 1.1, "{ratios:?}");
    }

    #[test]
    fn report_merge() {
        let mut a = LemmaReport::new("x");
        a.record(1.0, 2.0);
        let mut b = LemmaReport::new("x");
        b.record(3.0, 2.0);
        let m = a.clone().merge(&b);
        assert_eq!((m.trials, m.violations, m.worst_slack), (2, 1, -1.0));
        assert!(a.passed() && !b.passed());
    }

    #[test]
    fn suites_are_seed_deterministic() {
        let g = GridSpec::uniform(3, 4).unwrap();
        assert_eq!(check_cross_gradient(10, &g, 99), check_cross_gradient(10, &g, 99));
        let grids = [GridSpec::uniform(3, 4).unwrap(), GridSpec::uniform(3, 8).unwrap()];
        assert_eq!(
            check_inverse_and_sobolev(8, &grids, 5),
            check_inverse_and_sobolev(8, &grids, 5)
        );
    }
}

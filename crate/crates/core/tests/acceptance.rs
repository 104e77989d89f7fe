//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and asserts.
//!
//! Run with `cargo test -p llbdf2-core --test acceptance -- --nocapture`.

mod common;

use std::sync::OnceLock;

use llbdf2_core::helmholtz::HelmholtzPlan;
use llbdf2_core::mesh::{sample_on_grid, GridSpec};
use llbdf2_core::ops::l2;
use llbdf2_core::stepper::{Algorithm, Forcing, SolverConfig, Stepper};
use llbdf2_core::verify::convergence::{convergence_study, ConvergenceReport, StudyTemplate};
use llbdf2_core::verify::lemmas::{
    check_cross_gradient, check_inverse_and_sobolev, check_projection_stability, check_two_level_projection,
    LemmaReport, IDENTITY_TOL,
};
use llbdf2_core::verify::random::{self, rng, white_noise};
use llbdf2_core::verify::{stability_comparison, ManufacturedSolution, Outcome};
use rand::Rng;

const ALPHA: f64 = 4.0;
const K_OVER_H: f64 = 0.5;
const T_FINAL: f64 = 0.25;
const LEVELS_2D: [usize; 4] = [8, 16, 32, 64];
const LEVELS_3D: [usize; 3] = [8, 16, 32];
const ORDER_2D: (f64, f64) = (1.7, 2.3);
const ORDER_3D: (f64, f64) = (1.6, 2.4);
const STARTUP_ORDER: f64 = 1.7;
const HELMHOLTZ_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-12;
const LEMMA_TRIALS: usize = 1000;
const LEMMA_KS: [f64; 3] = [0.1, 0.05, 0.025];

fn report(criterion: u32, ok: bool, detail: &str) {
    println!("[{}] criterion {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn study(dim: usize) -> &'static ConvergenceReport {
    static S2: OnceLock<ConvergenceReport> = OnceLock::new();
    static S3: OnceLock<ConvergenceReport> = OnceLock::new();
    let (cell, levels): (_, &[usize]) = match dim {
        2 => (&S2, &LEVELS_2D),
        _ => (&S3, &LEVELS_3D),
    };
    cell.get_or_init(|| {
        let template = StudyTemplate {
            dim,
            alpha: ALPHA,
            k_over_h: K_OVER_H,
            t_final: T_FINAL,
            algorithm: Algorithm::Projected,
        };
        let ms = ManufacturedSolution::new(ALPHA, dim).unwrap();
        let rep = convergence_study(levels, &template, &ms).unwrap();
        for l in &rep.levels {
            println!(
                "  d={dim} N={:>3} k={:.5} steps={:>3} linf_l2={:.6e} l2_h1={:.6e} startup={:.6e} unit_dev={:.2e}",
                l.n, l.k, l.steps, l.errors.linf_l2, l.errors.l2_h1, l.errors.startup_l2, l.max_unit_deviation
            );
        }
        rep
    })
}

fn orders(o: &[Option<f64>]) -> Vec<f64> {
    o.iter().map(|x| x.unwrap_or(f64::NAN)).collect()
}

fn within(x: f64, (lo, hi): (f64, f64)) -> bool {
    (lo..=hi).contains(&x)
}

#[test]
fn criterion_1_second_order_convergence() {
    let r2 = study(2);
    let r3 = study(3);
    let (a2, b2) = (orders(&r2.orders_linf_l2), orders(&r2.orders_l2_h1));
    let (a3, b3) = (orders(&r3.orders_linf_l2), orders(&r3.orders_l2_h1));
    let ok2 = a2.iter().chain(&b2).all(|&o| within(o, ORDER_2D));
    let ok3 = within(*a3.last().unwrap(), ORDER_3D) && within(*b3.last().unwrap(), ORDER_3D);
    let ok = ok2 && ok3;
    report(
        1,
        ok,
        &format!("2D orders linf_l2 {a2:.3?} l2_h1 {b2:.3?}; 3D orders linf_l2 {a3:.3?} l2_h1 {b3:.3?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_2_startup_error_is_second_order() {
    let o2 = orders(&study(2).orders_startup);
    let o3 = orders(&study(3).orders_startup);
    let ok = o2.iter().chain(&o3).all(|&o| o >= STARTUP_ORDER);
    report(
        2,
        ok,
        &format!("start-up orders 2D {o2:.3?}, 3D {o3:.3?} (need >= {STARTUP_ORDER})"),
    );
    assert!(ok);
}

#[test]
fn criterion_3_helmholtz_exactness() {
    let mut r = rng(0x4e1);
    let mut worst_residual: f64 = 0.0;
    let mut cases = 0;
    for dim in 1..=3 {
        for trial in 0..200 {
            let cells: Vec<usize> = (0..dim)
                .map(|_| match (dim, trial % 50) {
                    (3, 0) => 64,
                    (3, _) => r.gen_range(2..=24),
                    _ => r.gen_range(2..=64),
                })
                .collect();
            let grid = GridSpec::new(dim, &cells).unwrap();
            let alpha = r.gen_range(0.05..8.0);
            let k = r.gen_range(1e-4..0.5);
            let plan = HelmholtzPlan::new(&grid, alpha, k).unwrap();
            let q = white_noise(&grid, &mut r);
            let u = plan.solve(&q).unwrap();
            let res = l2(&plan.apply(&u).lincomb(1.0, &q, -1.0)) / l2(&q);
            worst_residual = worst_residual.max(res);
            cases += 1;
        }
    }
    let mut worst_dense: f64 = 0.0;
    for dim in 1..=3 {
        for _ in 0..20 {
            let cells: Vec<usize> = (0..dim).map(|_| r.gen_range(2..=4)).collect();
            let grid = GridSpec::new(dim, &cells).unwrap();
            let alpha = r.gen_range(0.05..8.0);
            let k = r.gen_range(1e-3..2.0);
            let plan = HelmholtzPlan::new(&grid, alpha, k).unwrap();
            let q = white_noise(&grid, &mut r);
            let ours = common::vectors(&plan.solve(&q).unwrap());
            let dense = common::dense_solve(&grid, 1.5 / k, alpha, &common::vectors(&q));
            worst_dense = worst_dense.max(common::max_diff(&ours, &dense) / common::max_abs(&dense).max(1.0));
        }
    }
    let ok = worst_residual <= HELMHOLTZ_TOL && worst_dense <= HELMHOLTZ_TOL;
    report(
        3,
        ok,
        &format!("{cases} random solves, worst relative residual {worst_residual:.2e}; dense match on N<=4 {worst_dense:.2e}"),
    );
    assert!(ok);
}

/// One scheme step from the crate and from the dense oracle on `N = 4`.
/// Returns the worst ℓ∞ disagreement over `(m̃, m)` and the worst unit defect.
fn fidelity_case(dim: usize, algorithm: Algorithm, forcing: Forcing, seed: u64) -> (f64, f64) {
    let grid = GridSpec::uniform(dim, 4).unwrap();
    let k = K_OVER_H * grid.h_min();
    let cfg = SolverConfig::new(grid, ALPHA, k, 1.0, algorithm, forcing).unwrap();
    let stepper = Stepper::new(cfg).unwrap();
    let ms = ManufacturedSolution::new(ALPHA, dim).unwrap();
    let m0 = match forcing {
        Forcing::Manufactured => ms.sample(&grid, 0.0),
        Forcing::None => random::smooth_unit(&grid, &mut rng(seed)),
    };
    let sampled_forcing = |t: f64| match forcing {
        Forcing::Manufactured => Some(common::vectors(&sample_on_grid(&grid, t, |x, t| ms.forcing(x, t)))),
        Forcing::None => None,
    };

    let mut worst: f64 = 0.0;
    let (tilde1, m1) = stepper.first_step(&m0).unwrap();
    let f1 = sampled_forcing(k);
    let (dt1, dm1) = common::dense_first_step(&grid, ALPHA, k, &common::vectors(&m0), f1.as_deref());
    worst = worst.max(common::max_diff(&common::vectors(&tilde1), &dt1));
    worst = worst.max(common::max_diff(&common::vectors(&m1), &dm1));

    let mut state = stepper.start(&m0).unwrap();
    let mut unit: f64 = state.curr.unit_deviation();
    for _ in 0..3 {
        let next = stepper.step(&state).unwrap();
        let prev = common::vectors(&state.prev);
        let curr = common::vectors(&state.curr);
        let tp = common::vectors(&state.tilde_prev);
        let tc = common::vectors(&state.tilde_curr);
        let tilde = match algorithm {
            Algorithm::Intermediate => Some((tp.as_slice(), tc.as_slice())),
            Algorithm::Projected => None,
        };
        let f = sampled_forcing(next.time);
        let (dt, dm) = common::dense_bdf2_step(&grid, ALPHA, k, &prev, &curr, tilde, f.as_deref());
        worst = worst.max(common::max_diff(&common::vectors(&next.tilde_curr), &dt));
        worst = worst.max(common::max_diff(&common::vectors(&next.curr), &dm));
        unit = unit.max(next.curr.unit_deviation());
        state = next;
    }
    (worst, unit)
}

#[test]
fn criterion_4_unit_length_invariant() {
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for dim in [2, 3] {
        for l in &study(dim).levels {
            worst = worst.max(l.max_unit_deviation);
            runs += 1;
        }
    }
    for dim in 1..=3 {
        for algorithm in [Algorithm::Projected, Algorithm::Intermediate] {
            for forcing in [Forcing::None, Forcing::Manufactured] {
                worst = worst.max(fidelity_case(dim, algorithm, forcing, 11).1);
                runs += 1;
            }
        }
    }
    let ok = worst <= UNIT_TOL;
    report(4, ok, &format!("max | |m| - 1 | over {runs} runs: {worst:.2e}"));
    assert!(ok);
}

fn lemma_line(r: &LemmaReport) -> String {
    let mut s = format!("{} trials={} violations={}", r.lemma, r.trials, r.violations);
    if let Some(k) = r.k {
        s += &format!(" k={k}");
    }
    if let Some(c) = r.constant {
        s += &format!(" C={c:.4}");
    }
    if let Some(d) = r.identity_defect {
        s += &format!(" identity_defect={d:.2e}");
    }
    s
}

#[test]
fn criterion_5_lemma_suites() {
    let g8 = GridSpec::uniform(3, 8).unwrap();
    let g16 = GridSpec::uniform(3, 16).unwrap();
    let g32 = GridSpec::uniform(3, 32).unwrap();
    let mut reports = vec![check_cross_gradient(LEMMA_TRIALS, &g8, 21)];
    for (i, &k) in LEMMA_KS.iter().enumerate() {
        let (a, b) = check_projection_stability(LEMMA_TRIALS, &g16, k, 22 + i as u64);
        reports.push(a);
        reports.push(b);
        reports.push(check_two_level_projection(LEMMA_TRIALS, &g16, k, 25 + i as u64));
    }
    let (inv, sob) = check_inverse_and_sobolev(LEMMA_TRIALS, &[g8, g16, g32], 28);
    reports.push(inv);
    reports.push(sob);
    for r in &reports {
        println!("  {}", lemma_line(r));
    }
    let violations: usize = reports.iter().map(|r| r.violations).sum();
    let defect = reports[0].identity_defect.unwrap();
    let ok = violations == 0 && defect <= IDENTITY_TOL;
    report(
        5,
        ok,
        &format!(
            "{} suites, {violations} violations, identity defect {defect:.2e}",
            reports.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_6_scheme_fidelity() {
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for algorithm in [Algorithm::Projected, Algorithm::Intermediate] {
        let mut w: f64 = 0.0;
        for dim in 1..=3 {
            for forcing in [Forcing::None, Forcing::Manufactured] {
                w = w.max(fidelity_case(dim, algorithm, forcing, 7 + dim as u64).0);
            }
        }
        lines.push(format!("{} {w:.2e}", algorithm.name()));
        worst = worst.max(w);
    }
    let ok = worst <= FIDELITY_TOL;
    report(
        6,
        ok,
        &format!("N=4 dense-oracle step, worst linf: {}", lines.join(", ")),
    );
    assert!(ok);
}

#[test]
fn criterion_7_stability_sweep() {
    let grid = GridSpec::uniform(2, 16).unwrap();
    let rows = stability_comparison(&[0.5, 1.0, 2.0, 4.0], &[0.125, 0.25, 0.5, 1.0], &grid, 0.1);
    println!(
        "  {:>5} {:>6} {:>6} {:>5}  {:<22} max| |m~|-1 |",
        "alg", "alpha", "k/h", "steps", "outcome"
    );
    for r in &rows {
        let outcome = match r.outcome {
            Outcome::Completed => "completed".to_string(),
            Outcome::Diverged(n) => format!("diverged at step {n}"),
            Outcome::ProjectionFailure(n) => format!("projection fail at {n}"),
            Outcome::Invalid => "invalid (< 2 steps)".to_string(),
        };
        println!(
            "  {:>5} {:>6} {:>6} {:>5}  {:<22} {:.3e}",
            r.algorithm.name(),
            r.alpha,
            r.ratio,
            r.steps,
            outcome,
            r.max_tilde_deviation
        );
    }
    let gate: Vec<_> = rows.iter().filter(|r| r.alpha == 4.0 && r.ratio == 0.25).collect();
    let ok = gate.len() == 2 && gate.iter().all(|r| r.completed());
    report(
        7,
        ok,
        "alpha=4, k=h/4, N=16, T=0.1: both variants complete with max |m~| <= 2",
    );
    assert!(ok);
}

//! The four subcommands. Each writes its tables and a manifest into its output
//! directory and returns a short summary for the terminal.

use std::path::{Path, PathBuf};

use llbdf2_core::ops::norms;
use llbdf2_core::verify::convergence::{report_from_levels, run_level, ConvergenceReport, StudyTemplate};
use llbdf2_core::verify::lemmas::{
    check_cross_gradient, check_inverse_and_sobolev, check_projection_stability, check_two_level_projection,
    LemmaReport, IDENTITY_TOL,
};
use llbdf2_core::verify::random;
use llbdf2_core::verify::{stability_comparison, ManufacturedSolution, Outcome, StabilityRow};
use llbdf2_core::{Algorithm, GridSpec, Stepper, VectorField};

use crate::config::{exact_float, Initial, RunConfig};
use crate::error::{CliError, Result};
use crate::manifest::{self, Manifest};
use crate::output::{write_csv, write_snapshot, Cell};

pub const NORMS_HEADER: [&str; 7] = ["step", "time", "l2", "linf", "h1", "min_len", "max_len"];
pub const CONVERGENCE_HEADER: [&str; 7] = ["N", "h", "k", "err_linf_l2", "err_l2_h1", "order_1", "order_2"];
pub const LEMMAS_HEADER: [&str; 5] = ["lemma", "trials", "violations", "worst_slack", "fitted_constant"];
pub const STABILITY_HEADER: [&str; 6] = [
    "algorithm",
    "alpha",
    "k_over_h",
    "steps",
    "outcome",
    "max_tilde_deviation",
];

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn float_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| exact_float(x)).collect::<Vec<_>>().join(",")
}

/// Initial field for `run`.
pub fn initial_field(cfg: &RunConfig) -> Result<VectorField> {
    let grid = cfg.solver.grid;
    Ok(match cfg.initial {
        Initial::Manufactured => ManufacturedSolution::new(cfg.solver.alpha, grid.dim())?.sample(&grid, 0.0),
        Initial::Uniform => VectorField::uniform(grid, [0.6, 0.0, 0.8]),
        Initial::Random => random::smooth_unit(&grid, &mut random::rng(cfg.seed)),
    })
}

pub fn snapshot_name(step: usize) -> String {
    format!("field_{step:06}.bin")
}

/// Integrates the configured problem and writes `norms.csv`, optional
/// snapshots and the manifest.
pub fn cmd_run(cfg: &RunConfig) -> Result<Manifest> {
    create_dir(&cfg.out_dir)?;
    let stepper = Stepper::new(cfg.solver)?;
    let m0 = initial_field(cfg)?;
    let mut outputs = vec!["norms.csv".to_string()];
    let (_, rows) = stepper.run(&m0, cfg.stride, |v| -> Result<Vec<Cell>> {
        if cfg.snapshots {
            let name = snapshot_name(v.step);
            write_snapshot(&cfg.out_dir.join(&name), v.m, v.time)?;
            outputs.push(name);
        }
        let n = norms(v.m);
        let (lo, hi) = v.m.length_range();
        Ok(vec![
            v.step.into(),
            v.time.into(),
            n.l2.into(),
            n.linf.into(),
            n.h1.into(),
            lo.into(),
            hi.into(),
        ])
    })?;
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    write_csv(&cfg.out_dir.join("norms.csv"), &NORMS_HEADER, &rows)?;
    let mut m = Manifest::new("run", cfg.to_pairs());
    outputs.push(manifest::FILE_NAME.to_string());
    m.outputs = outputs;
    m.write(&cfg.out_dir)?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeParams {
    pub dim: usize,
    pub levels: Vec<usize>,
    pub alpha: f64,
    pub k_over_h: f64,
    pub t_final: f64,
    pub algorithm: Algorithm,
    pub out_dir: PathBuf,
}

impl Default for ConvergeParams {
    fn default() -> Self {
        Self {
            dim: 2,
            levels: vec![8, 16, 32],
            alpha: 4.0,
            k_over_h: 0.5,
            t_final: 0.25,
            algorithm: Algorithm::Projected,
            out_dir: PathBuf::from("out"),
        }
    }
}

/// Accepted range for the observed orders: every adjacent pair in one and two
/// dimensions, the finest pair in three.
pub fn order_window(dim: usize) -> (f64, f64) {
    if dim == 3 {
        (1.6, 2.4)
    } else {
        (1.7, 2.3)
    }
}

fn gated_orders(rep: &ConvergenceReport, dim: usize) -> Vec<Option<f64>> {
    let pick = |o: &[Option<f64>]| -> Vec<Option<f64>> {
        if dim == 3 {
            o.last().copied().into_iter().collect()
        } else {
            o.to_vec()
        }
    };
    let mut out = pick(&rep.orders_linf_l2);
    out.extend(pick(&rep.orders_l2_h1));
    out
}

/// Refinement study on the manufactured problem; levels run on separate
/// threads. Fails with an acceptance error when an order leaves the window.
pub fn cmd_converge(p: &ConvergeParams) -> Result<(Manifest, ConvergenceReport)> {
    if p.levels.len() < 3 || p.levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::BadValue {
            key: "levels".into(),
            value: list(&p.levels),
            reason: "need at least three strictly increasing levels".into(),
        });
    }
    if !(p.alpha > 3.0) {
        return Err(CliError::BadValue {
            key: "alpha".into(),
            value: p.alpha.to_string(),
            reason: "the study requires alpha > 3".into(),
        });
    }
    if !(p.k_over_h > 0.0) {
        return Err(CliError::NonPositive {
            key: "ratio".into(),
            value: p.k_over_h,
        });
    }
    create_dir(&p.out_dir)?;
    let template = StudyTemplate {
        dim: p.dim,
        alpha: p.alpha,
        k_over_h: p.k_over_h,
        t_final: p.t_final,
        algorithm: p.algorithm,
    };
    let ms = ManufacturedSolution::new(p.alpha, p.dim)?;
    let records = std::thread::scope(|s| {
        let handles: Vec<_> = p
            .levels
            .iter()
            .map(|&n| s.spawn(move || run_level(&template, n, &ms)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("level thread panicked"))
            .collect::<llbdf2_core::Result<Vec<_>>>()
    })?;
    let rep = report_from_levels(records);
    let rows: Vec<Vec<Cell>> = rep
        .levels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let order = |o: &[Option<f64>]| if i == 0 { None } else { o[i - 1] };
            vec![
                l.n.into(),
                l.h.into(),
                l.k.into(),
                l.errors.linf_l2.into(),
                l.errors.l2_h1.into(),
                order(&rep.orders_linf_l2).into(),
                order(&rep.orders_l2_h1).into(),
            ]
        })
        .collect();
    write_csv(&p.out_dir.join("convergence.csv"), &CONVERGENCE_HEADER, &rows)?;
    let mut m = Manifest::new(
        "converge",
        vec![
            ("dim".into(), p.dim.to_string()),
            ("levels".into(), list(&p.levels)),
            ("alpha".into(), exact_float(p.alpha)),
            ("ratio".into(), exact_float(p.k_over_h)),
            ("T".into(), exact_float(p.t_final)),
            ("algorithm".into(), p.algorithm.name().into()),
            ("out_dir".into(), p.out_dir.display().to_string()),
        ],
    );
    m.outputs = vec!["convergence.csv".into(), manifest::FILE_NAME.into()];
    m.write(&p.out_dir)?;

    let (lo, hi) = order_window(p.dim);
    let bad: Vec<String> = gated_orders(&rep, p.dim)
        .into_iter()
        .filter(|o| !o.is_some_and(|o| (lo..=hi).contains(&o)))
        .map(|o| o.map_or("undefined".into(), |o| format!("{o:.3}")))
        .collect();
    if !bad.is_empty() {
        return Err(CliError::Acceptance(format!(
            "observed orders outside [{lo}, {hi}]: {}",
            bad.join(", ")
        )));
    }
    Ok((m, rep))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaParams {
    pub trials: usize,
    pub seed: u64,
    pub ks: Vec<f64>,
    pub out_dir: PathBuf,
}

impl Default for LemmaParams {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            ks: vec![0.1, 0.05, 0.025],
            out_dir: PathBuf::from("out"),
        }
    }
}

fn row_name(r: &LemmaReport) -> String {
    match r.k {
        Some(k) => format!("{}(k={k})", r.lemma),
        None => r.lemma.to_string(),
    }
}

/// Runs every fuzz suite on three-dimensional grids: cross product on
/// `N = 8`, projection suites on `N = 16`, inverse and Sobolev fitted on `N = 8`
/// and checked on `N = 16, 32`.
pub fn cmd_lemmas(p: &LemmaParams) -> Result<(Manifest, Vec<LemmaReport>)> {
    if p.trials == 0 {
        return Err(CliError::BadValue {
            key: "trials".into(),
            value: "0".into(),
            reason: "need at least one trial".into(),
        });
    }
    if let Some(&k) = p.ks.iter().find(|&&k| !(k > 0.0 && k < 1.0)) {
        return Err(CliError::BadValue {
            key: "k".into(),
            value: k.to_string(),
            reason: "time steps must lie in (0, 1)".into(),
        });
    }
    create_dir(&p.out_dir)?;
    let g8 = GridSpec::uniform(3, 8)?;
    let g16 = GridSpec::uniform(3, 16)?;
    let g32 = GridSpec::uniform(3, 32)?;
    let base = p.seed.wrapping_mul(1000);
    let mut reports = vec![check_cross_gradient(p.trials, &g8, base + 1)];
    for (i, &k) in p.ks.iter().enumerate() {
        let s = base + 10 + 3 * i as u64;
        let (a, b) = check_projection_stability(p.trials, &g16, k, s);
        reports.push(a);
        reports.push(b);
        reports.push(check_two_level_projection(p.trials, &g16, k, s + 1));
    }
    let (inv, sob) = check_inverse_and_sobolev(p.trials, &[g8, g16, g32], base + 2);
    reports.push(inv);
    reports.push(sob);

    let rows: Vec<Vec<Cell>> = reports
        .iter()
        .map(|r| {
            vec![
                row_name(r).into(),
                r.trials.into(),
                r.violations.into(),
                r.worst_slack.into(),
                r.constant.into(),
            ]
        })
        .collect();
    write_csv(&p.out_dir.join("lemmas.csv"), &LEMMAS_HEADER, &rows)?;
    let mut m = Manifest::new(
        "lemmas",
        vec![
            ("trials".into(), p.trials.to_string()),
            ("seed".into(), p.seed.to_string()),
            ("k".into(), float_list(&p.ks)),
            ("out_dir".into(), p.out_dir.display().to_string()),
        ],
    );
    m.outputs = vec!["lemmas.csv".into(), manifest::FILE_NAME.into()];
    m.write(&p.out_dir)?;

    let failing: Vec<String> = reports
        .iter()
        .filter(|r| r.violations > 0)
        .map(|r| format!("{} ({} violations)", row_name(r), r.violations))
        .collect();
    if !failing.is_empty() {
        return Err(CliError::Acceptance(failing.join(", ")));
    }
    let defect = reports[0].identity_defect.unwrap_or(0.0);
    if !(defect <= IDENTITY_TOL) {
        return Err(CliError::Acceptance(format!("summation-by-parts defect {defect:e}")));
    }
    Ok((m, reports))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareParams {
    pub dim: usize,
    pub cells: usize,
    pub t_final: f64,
    pub alphas: Vec<f64>,
    pub ratios: Vec<f64>,
    pub out_dir: PathBuf,
}

impl Default for CompareParams {
    fn default() -> Self {
        Self {
            dim: 2,
            cells: 16,
            t_final: 0.1,
            alphas: vec![0.5, 1.0, 2.0, 4.0],
            ratios: vec![0.125, 0.25, 0.5, 1.0],
            out_dir: PathBuf::from("out"),
        }
    }
}

pub fn outcome_text(o: Outcome) -> String {
    match o {
        Outcome::Completed => "completed".into(),
        Outcome::Diverged(n) => format!("diverged@{n}"),
        Outcome::ProjectionFailure(n) => format!("projection_failure@{n}"),
        Outcome::Invalid => "invalid".into(),
    }
}

/// Stability sweep of both variants. Gated only on the `α = 4, k/h = 1/4`
/// cells, when the sweep contains them.
pub fn cmd_compare(p: &CompareParams) -> Result<(Manifest, Vec<StabilityRow>)> {
    let grid = GridSpec::uniform(p.dim, p.cells)?;
    if !(p.t_final > 0.0) {
        return Err(CliError::NonPositive {
            key: "T".into(),
            value: p.t_final,
        });
    }
    for (key, xs) in [("alphas", &p.alphas), ("ratios", &p.ratios)] {
        if xs.is_empty() || xs.iter().any(|&x| !(x > 0.0)) {
            return Err(CliError::BadValue {
                key: key.into(),
                value: float_list(xs),
                reason: "need a non-empty list of positive numbers".into(),
            });
        }
    }
    create_dir(&p.out_dir)?;
    let rows = stability_comparison(&p.alphas, &p.ratios, &grid, p.t_final);
    let table: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                r.algorithm.name().into(),
                r.alpha.into(),
                r.ratio.into(),
                r.steps.into(),
                outcome_text(r.outcome).into(),
                r.max_tilde_deviation.into(),
            ]
        })
        .collect();
    write_csv(&p.out_dir.join("stability.csv"), &STABILITY_HEADER, &table)?;
    let mut m = Manifest::new(
        "compare",
        vec![
            ("dim".into(), p.dim.to_string()),
            ("cells".into(), p.cells.to_string()),
            ("T".into(), exact_float(p.t_final)),
            ("alphas".into(), float_list(&p.alphas)),
            ("ratios".into(), float_list(&p.ratios)),
            ("out_dir".into(), p.out_dir.display().to_string()),
        ],
    );
    m.outputs = vec!["stability.csv".into(), manifest::FILE_NAME.into()];
    m.write(&p.out_dir)?;

    let failed: Vec<String> = rows
        .iter()
        .filter(|r| r.alpha == 4.0 && r.ratio == 0.25 && !r.completed())
        .map(|r| format!("{} {}", r.algorithm.name(), outcome_text(r.outcome)))
        .collect();
    if !failed.is_empty() {
        return Err(CliError::Acceptance(format!(
            "alpha = 4, k/h = 1/4: {}",
            failed.join(", ")
        )));
    }
    Ok((m, rows))
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use llbdf2::commands::{outcome_text, CompareParams, ConvergeParams, LemmaParams};
use llbdf2::config::{self, Pairs};
use llbdf2_core::stepper::RATIO_BOUNDS;

use llbdf2::{cmd_compare, cmd_converge, cmd_lemmas, cmd_run, CliError};

#[derive(Parser, Debug)]
#[command(version, about = "Linear BDF2 projection schemes for the Landau-Lifshitz equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Integrate one configuration and write norms.csv (and snapshots)
    Run(RunArgs),
    /// Refinement study against the manufactured solution
    Converge(ConvergeArgs),
    /// Fuzz the discrete inequalities
    Lemmas(LemmaArgs),
    /// Stability sweep of both scheme variants
    Compare(CompareArgs),
}

/// Every flag overrides the key of the same name in the config file.
#[derive(Args, Debug)]
struct RunArgs {
    /// Config file with `key = value` lines
    #[arg(short, long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<String>,
    /// Cells per axis, e.g. `32` or `32,16`
    #[arg(long)]
    cells: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    /// Final time (config key `T`)
    #[arg(long = "t-final")]
    t_final: Option<String>,
    /// alg21 or alg22
    #[arg(long)]
    algorithm: Option<String>,
    /// none or manufactured
    #[arg(long)]
    forcing: Option<String>,
    /// manufactured, uniform or random
    #[arg(long)]
    initial: Option<String>,
    #[arg(long)]
    stride: Option<String>,
    #[arg(long)]
    snapshots: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "out-dir")]
    out_dir: Option<String>,
}

impl RunArgs {
    fn flag_pairs(&self) -> Pairs {
        [
            ("dim", &self.dim),
            ("cells", &self.cells),
            ("alpha", &self.alpha),
            ("dt", &self.dt),
            ("T", &self.t_final),
            ("algorithm", &self.algorithm),
            ("forcing", &self.forcing),
            ("initial", &self.initial),
            ("stride", &self.stride),
            ("snapshots", &self.snapshots),
            ("seed", &self.seed),
            ("out_dir", &self.out_dir),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
        .collect()
    }
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    levels: Vec<usize>,
    #[arg(long, default_value_t = 4.0)]
    alpha: f64,
    /// Fixed k/h
    #[arg(long, default_value_t = 0.5)]
    ratio: f64,
    #[arg(long = "t-final", default_value_t = 0.25)]
    t_final: f64,
    #[arg(long, default_value = "alg22")]
    algorithm: String,
    #[arg(long = "out-dir", default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time steps for the projection suites
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025")]
    k: Vec<f64>,
    #[arg(long = "out-dir", default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 16)]
    cells: usize,
    #[arg(long = "t-final", default_value_t = 0.1)]
    t_final: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4")]
    alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.125,0.25,0.5,1")]
    ratios: Vec<f64>,
    #[arg(long = "out-dir", default_value = "out")]
    out_dir: PathBuf,
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let mut sources = Vec::new();
    if let Some(path) = &args.config {
        sources.push(config::read_pairs(path)?);
    }
    sources.push(args.flag_pairs());
    let cfg = config::resolve(&sources)?;
    if let Some(r) = cfg.solver.ratio_warning() {
        let (lo, hi) = RATIO_BOUNDS;
        eprintln!("warning: k/h = {r:.4} is outside [{lo}, {hi}]; the convergence estimate assumes k ~ h");
    }
    let m = cmd_run(&cfg)?;
    println!(
        "{} steps of {} written to {} ({} files)",
        cfg.solver.steps(),
        cfg.solver.algorithm.name(),
        cfg.out_dir.display(),
        m.outputs.len()
    );
    Ok(())
}

fn converge(a: ConvergeArgs) -> Result<(), CliError> {
    let p = ConvergeParams {
        dim: a.dim,
        levels: a.levels,
        alpha: a.alpha,
        k_over_h: a.ratio,
        t_final: a.t_final,
        algorithm: config::parse_algorithm(&a.algorithm)?,
        out_dir: a.out_dir,
    };
    let (_, rep) = cmd_converge(&p)?;
    for (i, l) in rep.levels.iter().enumerate() {
        let o = |v: &[Option<f64>]| match i.checked_sub(1).and_then(|j| v[j]) {
            Some(x) => format!("{x:6.3}"),
            None => "     -".into(),
        };
        println!(
            "N = {:4}  k = {:.5}  err_linf_l2 = {:.4e} ({})  err_l2_h1 = {:.4e} ({})",
            l.n,
            l.k,
            l.errors.linf_l2,
            o(&rep.orders_linf_l2),
            l.errors.l2_h1,
            o(&rep.orders_l2_h1)
        );
    }
    Ok(())
}

fn lemmas(a: LemmaArgs) -> Result<(), CliError> {
    let p = LemmaParams {
        trials: a.trials,
        seed: a.seed,
        ks: a.k,
        out_dir: a.out_dir,
    };
    let (_, reports) = cmd_lemmas(&p)?;
    for r in &reports {
        println!("{:<28} trials = {:5}  violations = {}", r.lemma, r.trials, r.violations);
    }
    Ok(())
}

fn compare(a: CompareArgs) -> Result<(), CliError> {
    let p = CompareParams {
        dim: a.dim,
        cells: a.cells,
        t_final: a.t_final,
        alphas: a.alphas,
        ratios: a.ratios,
        out_dir: a.out_dir,
    };
    let (_, rows) = cmd_compare(&p)?;
    println!("{:>5} {:>6} {:>6} {:>5}  outcome", "alg", "alpha", "k/h", "steps");
    for r in &rows {
        println!(
            "{:>5} {:>6} {:>6} {:>5}  {}",
            r.algorithm.name(),
            r.alpha,
            r.ratio,
            r.steps,
            outcome_text(r.outcome)
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Converge(a) => converge(a),
        Command::Lemmas(a) => lemmas(a),
        Command::Compare(a) => compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Flat `key = value` configuration.
//!
//! Recognized keys and their defaults:
//!
//! | key         | default         | meaning                                         |
//! |-------------|-----------------|-------------------------------------------------|
//! | `dim`       | `2`             | spatial dimension, 1 to 3                       |
//! | `cells`     | `16`            | cells per axis; one value or one per axis       |
//! | `alpha`     | `4`             | damping, > 0                                    |
//! | `dt`        | `h/2`           | time step, > 0 (default: half the finest `h`)   |
//! | `T`         | `0.25`          | final time, > 0; `floor(T/dt) >= 2`             |
//! | `algorithm` | `alg22`         | `alg21` (intermediate history) or `alg22`       |
//! | `forcing`   | `none`          | `none` or `manufactured`                        |
//! | `initial`   | `manufactured`  | `manufactured`, `uniform` or `random`           |
//! | `stride`    | `1`             | observer stride in steps, >= 1                  |
//! | `snapshots` | `false`         | dump fields at every observed step              |
//! | `seed`      | `0`             | RNG seed for `initial = random`                 |
//! | `out_dir`   | `out`           | output directory                                |
//!
//! Lines are `key = value`; `#` starts a comment. Later sources override
//! earlier ones (defaults, then file, then flags).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use llbdf2_core::{Algorithm, Forcing, GridSpec, SolverConfig};

use crate::error::{CliError, Result};

pub const KEYS: [&str; 12] = [
    "dim",
    "cells",
    "alpha",
    "dt",
    "T",
    "algorithm",
    "forcing",
    "initial",
    "stride",
    "snapshots",
    "seed",
    "out_dir",
];

/// Initial magnetization for `run`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initial {
    /// Manufactured solution at `t = 0`.
    Manufactured,
    /// Constant field `(0.6, 0, 0.8)`.
    Uniform,
    /// Smooth random unit field drawn from `seed`.
    Random,
}

impl Initial {
    pub fn name(self) -> &'static str {
        match self {
            Initial::Manufactured => "manufactured",
            Initial::Uniform => "uniform",
            Initial::Random => "random",
        }
    }
}

/// Fully resolved configuration of a `run`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub solver: SolverConfig,
    pub initial: Initial,
    pub stride: usize,
    pub snapshots: bool,
    pub seed: u64,
    pub out_dir: PathBuf,
}

/// Ordered key/value pairs from one source.
pub type Pairs = Vec<(String, String)>;

/// Parses config text. `origin` is only used in messages.
pub fn parse_pairs(text: &str, origin: &str) -> Result<Pairs> {
    let mut out: Pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Syntax {
                path: origin.to_string(),
                line: i + 1,
                text: raw.trim().to_string(),
            });
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::Syntax {
                path: origin.to_string(),
                line: i + 1,
                text: raw.trim().to_string(),
            });
        }
        if out.iter().any(|(key, _)| key == k) {
            return Err(CliError::DuplicateKey(k.to_string()));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

/// Reads and parses a config file.
pub fn read_pairs(path: &Path) -> Result<Pairs> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_pairs(&text, &path.display().to_string())
}

fn bad(key: &str, value: &str, reason: impl Into<String>) -> CliError {
    CliError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.into(),
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(key, value, "not a number"))
}

pub fn parse_algorithm(value: &str) -> Result<Algorithm> {
    match value {
        "alg21" => Ok(Algorithm::Intermediate),
        "alg22" => Ok(Algorithm::Projected),
        _ => Err(bad("algorithm", value, "expected alg21 or alg22")),
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(key, value, "expected true or false")),
    }
}

/// Comma- or whitespace-separated list of cell counts.
pub fn parse_cells(value: &str) -> Result<Vec<usize>> {
    let cells: Vec<usize> = value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| number("cells", s))
        .collect::<Result<_>>()?;
    if cells.is_empty() {
        return Err(bad("cells", value, "empty list"));
    }
    Ok(cells)
}

/// Merges the sources in order and validates the result.
pub fn resolve(sources: &[Pairs]) -> Result<RunConfig> {
    let mut map: BTreeMap<&str, &str> = BTreeMap::new();
    for pairs in sources {
        for (k, v) in pairs {
            let Some(key) = KEYS.iter().find(|&&known| known == k) else {
                return Err(CliError::UnknownKey(k.clone()));
            };
            map.insert(key, v);
        }
    }
    let get = |k: &str| map.get(k).copied();

    let dim: usize = get("dim").map_or(Ok(2), |v| number("dim", v))?;
    if !(1..=3).contains(&dim) {
        return Err(bad("dim", &dim.to_string(), "must be 1, 2 or 3"));
    }
    let mut cells = get("cells").map_or(Ok(vec![16]), parse_cells)?;
    if cells.len() == 1 {
        cells = vec![cells[0]; dim];
    }
    let grid = GridSpec::new(dim, &cells)?;

    let alpha: f64 = get("alpha").map_or(Ok(4.0), |v| number("alpha", v))?;
    let dt: f64 = get("dt").map_or(Ok(0.5 * grid.h_min()), |v| number("dt", v))?;
    let t_final: f64 = get("T").map_or(Ok(0.25), |v| number("T", v))?;
    let algorithm = get("algorithm").map_or(Ok(Algorithm::Projected), parse_algorithm)?;
    let forcing = match get("forcing").unwrap_or("none") {
        "none" => Forcing::None,
        "manufactured" => Forcing::Manufactured,
        v => return Err(bad("forcing", v, "expected none or manufactured")),
    };
    let initial = match get("initial").unwrap_or("manufactured") {
        "manufactured" => Initial::Manufactured,
        "uniform" => Initial::Uniform,
        "random" => Initial::Random,
        v => return Err(bad("initial", v, "expected manufactured, uniform or random")),
    };
    let stride: usize = get("stride").map_or(Ok(1), |v| number("stride", v))?;
    if stride == 0 {
        return Err(bad("stride", "0", "must be at least 1"));
    }
    let snapshots = get("snapshots").map_or(Ok(false), |v| parse_bool("snapshots", v))?;
    let seed: u64 = get("seed").map_or(Ok(0), |v| number("seed", v))?;
    let out_dir = PathBuf::from(get("out_dir").unwrap_or("out"));
    if out_dir.as_os_str().is_empty() {
        return Err(bad("out_dir", "", "must not be empty"));
    }

    let solver = SolverConfig::new(grid, alpha, dt, t_final, algorithm, forcing)?;
    Ok(RunConfig {
        solver,
        initial,
        stride,
        snapshots,
        seed,
        out_dir,
    })
}

/// Shortest text that parses back to exactly `x`.
pub(crate) fn exact_float(x: f64) -> String {
    format!("{x:?}")
}

impl RunConfig {
    /// Every key with its resolved value, in [`KEYS`] order. Feeding this back
    /// through [`resolve`] reproduces the configuration exactly.
    pub fn to_pairs(&self) -> Pairs {
        let s = &self.solver;
        let cells: Vec<String> = s.grid.cells().iter().map(|c| c.to_string()).collect();
        [
            ("dim", s.grid.dim().to_string()),
            ("cells", cells.join(",")),
            ("alpha", exact_float(s.alpha)),
            ("dt", exact_float(s.k)),
            ("T", exact_float(s.t_final)),
            ("algorithm", s.algorithm.name().to_string()),
            ("forcing", s.forcing.name().to_string()),
            ("initial", self.initial.name().to_string()),
            ("stride", self.stride.to_string()),
            ("snapshots", self.snapshots.to_string()),
            ("seed", self.seed.to_string()),
            ("out_dir", self.out_dir.display().to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

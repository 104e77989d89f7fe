//! CSV tables and binary field snapshots.
//!
//! Snapshot layout, all little-endian:
//!
//! ```text
//! magic    8 bytes  b"LLBDF2FD"
//! version  u32      1
//! dim      u32
//! cells    dim x u64
//! time     f64
//! values   3 x Π cells  f64, component-outer, then x, y, z row-major
//! ```

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use llbdf2_core::{GridSpec, VectorField};

use crate::error::{CliError, Result};

pub const SNAPSHOT_MAGIC: [u8; 8] = *b"LLBDF2FD";
pub const SNAPSHOT_VERSION: u32 = 1;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            // 17 significant digits: exact round trip for every f64
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

pub fn csv_text(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        s += &line.join(",");
        s.push('\n');
    }
    s
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    std::fs::write(path, csv_text(header, rows)).map_err(|e| CliError::io(path, e))
}

pub fn write_snapshot(path: &Path, field: &VectorField, time: f64) -> Result<()> {
    let grid = field.grid();
    let mut buf = Vec::with_capacity(32 + 24 * grid.interior_len());
    buf.extend_from_slice(&SNAPSHOT_MAGIC);
    buf.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(grid.dim() as u32).to_le_bytes());
    for &n in grid.cells() {
        buf.extend_from_slice(&(n as u64).to_le_bytes());
    }
    buf.extend_from_slice(&time.to_le_bytes());
    for c in 0..3 {
        for v in field.component(c).interior_values() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(&buf)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Option<[u8; N]> {
        let out = self.bytes.get(self.pos..self.pos + N)?.try_into().ok()?;
        self.pos += N;
        Some(out)
    }
}

/// Loads a snapshot; the returned field is mirror-extended.
pub fn read_snapshot(path: &Path) -> Result<(VectorField, f64)> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| CliError::io(path, e))?;
    let fail = |reason: &str| CliError::Snapshot {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut r = Reader { bytes: &bytes, pos: 0 };
    if r.take::<8>() != Some(SNAPSHOT_MAGIC) {
        return Err(fail("bad magic"));
    }
    let version = r
        .take::<4>()
        .map(u32::from_le_bytes)
        .ok_or_else(|| fail("truncated header"))?;
    if version != SNAPSHOT_VERSION {
        return Err(fail(&format!("unsupported version {version}")));
    }
    let dim = r
        .take::<4>()
        .map(u32::from_le_bytes)
        .ok_or_else(|| fail("truncated header"))? as usize;
    if !(1..=3).contains(&dim) {
        return Err(fail(&format!("dimension {dim}")));
    }
    let cells: Vec<usize> = (0..dim)
        .map(|_| r.take::<8>().map(|b| u64::from_le_bytes(b) as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| fail("truncated header"))?;
    let time = r
        .take::<8>()
        .map(f64::from_le_bytes)
        .ok_or_else(|| fail("truncated header"))?;
    let grid = GridSpec::new(dim, &cells).map_err(|e| fail(&e.to_string()))?;
    let n = grid.interior_len();
    if bytes.len() - r.pos != 24 * n {
        return Err(fail(&format!(
            "expected {} value bytes, found {}",
            24 * n,
            bytes.len() - r.pos
        )));
    }
    let comps: Vec<Vec<f64>> = (0..3)
        .map(|_| (0..n).map(|_| f64::from_le_bytes(r.take::<8>().unwrap())).collect())
        .collect();
    let mut p = 0;
    let field = VectorField::from_interior_fn(grid, |_| {
        let v = [comps[0][p], comps[1][p], comps[2][p]];
        p += 1;
        v
    });
    Ok((field, time))
}

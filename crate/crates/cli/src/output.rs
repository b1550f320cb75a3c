//! Run folders, manifests and CSV tables.
//!
//! A run writes `<out-dir>/<command>/<timestamp>/manifest.json` before any
//! computation starts, then its CSV tables and SVG plots. CSV output holds
//! nothing time- or thread-dependent, so replaying a manifest reproduces it
//! byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{CommandConfig, Format};
use crate::error::{CliError, CliResult};

/// Version of the CSV layouts written by this tool.
pub const CSV_SCHEMA_VERSION: u32 = 1;
/// Version of the manifest layout.
pub const MANIFEST_VERSION: u32 = 1;

/// Everything needed to replay a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub manifest_version: u32,
    pub tool_version: String,
    pub created_at: String,
    pub out_dir: PathBuf,
    pub format: Format,
    pub config: CommandConfig,
}

impl Manifest {
    pub fn new(config: CommandConfig, out_dir: PathBuf, format: Format) -> Self {
        Self {
            manifest_version: MANIFEST_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            out_dir,
            format,
            config,
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::Manifest { path: path.to_path_buf(), source })
    }
}

/// Creates a fresh timestamped folder under `<out_dir>/<command>/`.
pub fn create_run_dir(out_dir: &Path, command: &str) -> CliResult<PathBuf> {
    let parent = out_dir.join(command);
    fs::create_dir_all(&parent).map_err(|e| CliError::io(&parent, e))?;
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string();
    for attempt in 0..1000 {
        let name = if attempt == 0 { stamp.clone() } else { format!("{stamp}-{attempt}") };
        let dir = parent.join(name);
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(CliError::io(&dir, e)),
        }
    }
    Err(CliError::io(&parent, std::io::Error::other("could not allocate a run folder")))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// One CSV cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Self::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Self::Int(x as u64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Self::Int(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Self::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Self::Text(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Self::Empty, Self::Num)
    }
}

/// A named CSV table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: Vec<&'static str>) -> Self {
        Self { name: name.to_string(), header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Schema comment line, header, then one line per row.
    pub fn to_csv(&self, command: &str) -> String {
        let mut out = format!("# mv-awgn {command} {} schema v{CSV_SCHEMA_VERSION}\n", self.name);
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(render_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn render_cell(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format_sig12(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => quote(s),
        Cell::Empty => String::new(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Decimal rendering with 12 significant digits; scientific notation
/// outside `[1e-5, 1e12)`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.11e}");
    // The exponent after rounding to 12 digits decides the layout.
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..12).contains(&exp) {
        let mut s = String::new();
        write!(s, "{:.*}", (11 - exp) as usize, x).unwrap();
        s
    } else {
        sci
    }
}

//! Report envelope and the JSON/CSV writers.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub const TOOL: &str = "spinphase";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub converged: bool,
    /// Human-readable notes (reduced confidence, unconverged refinements).
    pub notes: Vec<String>,
    /// Largest change of `S_W` or `I` on the doubled grid, when measured.
    pub convergence_delta: Option<f64>,
    pub evaluations: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    /// Seconds since the Unix epoch; absent unless requested.
    pub timestamp: Option<u64>,
    pub payload: Value,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

/// 17 significant digits in scientific notation, which round-trips any f64
/// and never depends on locale.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }
}

pub fn envelope_json(env: &ReportEnvelope) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(env).map_err(|e| CliError::Io(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Path of the JSON envelope written next to a CSV report.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".envelope.json");
    PathBuf::from(s)
}

pub fn read_envelope(path: &Path) -> Result<ReportEnvelope, CliError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: not a report envelope: {e}", path.display())))
}

/// Writes the report per the config's format and destination.
pub fn emit(env: &ReportEnvelope, table: &CsvTable) -> Result<(), CliError> {
    let json = envelope_json(env)?;
    match (env.config.format, &env.config.out) {
        (crate::config::Format::Json, None) => std::io::stdout().lock().write_all(&json)?,
        (crate::config::Format::Json, Some(out)) => std::fs::write(out, &json)?,
        (crate::config::Format::Csv, None) => std::io::stdout().lock().write_all(&table.to_bytes()?)?,
        (crate::config::Format::Csv, Some(out)) => {
            std::fs::write(out, table.to_bytes()?)?;
            std::fs::write(sidecar_path(out), &json)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits_and_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.0921614091780946e-33, 1.7976931348623157e308, 0.0] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.len(), 18, "{s}");
        }
    }

    #[test]
    fn csv_has_header_and_empty_cells_for_missing_values() {
        let mut t = CsvTable::new(vec!["a", "b", "c"]);
        t.push(vec![1.5.into(), Cell::Empty, "x,y".into()]);
        let text = String::from_utf8(t.to_bytes().unwrap()).unwrap();
        assert_eq!(text, "a,b,c\n1.5000000000000000e0,,\"x,y\"\n");
        assert_eq!(CsvTable::new(vec!["only"]).to_bytes().unwrap(), b"only\n");
    }

    #[test]
    fn sidecar_sits_next_to_the_report() {
        assert_eq!(sidecar_path(Path::new("out/run.csv")), PathBuf::from("out/run.csv.envelope.json"));
    }
}

//! Series ingestion and report serialization.
//!
//! CSV floats use ten significant digits in `%g` style so that outputs are
//! byte-stable across platforms.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{ConvergenceReport, ConvergenceRow};
use crate::simulate::Series;

pub const CONVERGENCE_HEADER: &str = "T,u,h,mean_w1,std_w1,L,mc_runs";

/// Column of a CSV file, by header name or zero-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    Index(usize),
}

impl FromStr for ColumnSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::input("empty column selector"));
        }
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnSelector::Name(n) => f.write_str(n),
            ColumnSelector::Index(i) => write!(f, "{i}"),
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads one numeric column. A non-numeric first row is taken as a header.
/// Files with several columns need an explicit `column`.
pub fn load_series_csv(path: &Path, column: Option<&ColumnSelector>) -> Result<Series> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_series_csv(&text, column)
}

pub fn parse_series_csv(text: &str, column: Option<&ColumnSelector>) -> Result<Series> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(records.len() + 1);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push((line, rec));
    }
    let Some((_, first)) = records.first() else {
        return Err(Error::Parse("file has no rows".into()));
    };
    let width = first.len();
    let first_is_header = first.iter().any(|c| c.parse::<f64>().is_err());

    let col = match column {
        None if width > 1 => {
            return Err(Error::input(format!(
                "file has {width} columns; choose one with --column"
            )))
        }
        None => 0,
        Some(ColumnSelector::Index(i)) if *i < width => *i,
        Some(ColumnSelector::Index(i)) => {
            return Err(Error::input(format!("column {i} out of range (file has {width})")))
        }
        Some(ColumnSelector::Name(name)) => {
            if !first_is_header {
                return Err(Error::input(format!("column '{name}' requested but the file has no header")));
            }
            first
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::input(format!("no column named '{name}'")))?
        }
    };

    let skip = usize::from(first_is_header);
    let mut values = Vec::with_capacity(records.len());
    for (line, rec) in records.iter().skip(skip) {
        let cell = rec.get(col).unwrap_or("");
        let v: f64 = cell
            .parse()
            .map_err(|_| Error::Parse(format!("row {line}: '{cell}' is not a number")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("row {line}: '{cell}' is not finite")));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Parse("column is empty".into()));
    }
    Series::new(values)
}

/// `%.10g`: ten significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-4, 1e10)`.
pub fn format_float(x: f64) -> String {
    const DIGITS: i32 = 10;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One table cell. Floats are formatted with [`format_float`] in CSV and
/// written as JSON numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => (*v).into(),
            Cell::Float(v) => (*v).into(),
            Cell::Text(s) => s.clone().into(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// A rectangular report: CSV with a header line, or a list of JSON objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_rows(&self) -> Vec<serde_json::Map<String, serde_json::Value>> {
        self.rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect()
            })
            .collect()
    }
}

pub fn convergence_table(report: &ConvergenceReport) -> Table {
    let mut table = Table::new(&["T", "u", "h", "mean_w1", "std_w1", "L", "mc_runs"]);
    for r in &report.rows {
        table.push(vec![
            r.t_len.into(),
            r.u.into(),
            r.h.into(),
            r.mean_w1.into(),
            r.std_w1.into(),
            r.replications.into(),
            r.mc_runs.into(),
        ]);
    }
    table
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // A closed pipe (`| head`) is the reader's choice, not a failure.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| io_err(Path::new("<stdout>"), e)),
            }
        }
    }
}

pub fn write_convergence_csv(report: &ConvergenceReport, path: &Path) -> Result<()> {
    write_output(Some(path), &convergence_table(report).to_csv())
}

pub fn read_convergence_csv(path: &Path) -> Result<Vec<ConvergenceRow>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CONVERGENCE_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header '{CONVERGENCE_HEADER}', found {other:?}"
            )))
        }
    }
    let bad = |line: usize, what: &str| Error::Parse(format!("line {line}: bad {what}"));
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let line = i + 2;
            let cells: Vec<&str> = l.split(',').collect();
            if cells.len() != 7 {
                return Err(Error::Parse(format!("line {line}: expected 7 fields")));
            }
            let f = |k: usize, what: &str| cells[k].parse::<f64>().map_err(|_| bad(line, what));
            let n = |k: usize, what: &str| cells[k].parse::<usize>().map_err(|_| bad(line, what));
            Ok(ConvergenceRow {
                t_len: n(0, "T")?,
                u: f(1, "u")?,
                h: f(2, "h")?,
                mean_w1: f(3, "mean_w1")?,
                std_w1: f(4, "std_w1")?,
                replications: n(5, "L")?,
                mc_runs: n(6, "mc_runs")?,
            })
        })
        .collect()
}

/// `{"meta": ..., "rows": [...]}` with a trailing newline.
pub fn json_report<M: Serialize, R: Serialize>(meta: &M, rows: &R) -> Result<String> {
    #[derive(Serialize)]
    struct Report<'a, M, R> {
        meta: &'a M,
        rows: &'a R,
    }
    let mut s = serde_json::to_string_pretty(&Report { meta, rows })
        .map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn series_table(series: &Series) -> Table {
    let mut table = Table::new(&["y"]);
    for v in series.values() {
        table.push(vec![(*v).into()]);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_headed_files() {
        let s = parse_series_csv("1\n2\n3\n", None).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        let s = parse_series_csv("y\n1.5\n-2\n", None).unwrap();
        assert_eq!(s.values(), &[1.5, -2.0]);
    }

    #[test]
    fn reports_the_offending_row() {
        let text = "1\n2\n3\n4\n5\n6\nabc\n8\n";
        let err = parse_series_csv(text, None).unwrap_err().to_string();
        assert!(err.contains("row 7"), "{err}");
    }

    #[test]
    fn multi_column_needs_selector() {
        let text = "date,value\n2020,1\n2021,2\n2022,4\n";
        assert!(parse_series_csv(text, None).is_err());
        let by_name = parse_series_csv(text, Some(&"value".parse().unwrap())).unwrap();
        assert_eq!(by_name.values(), &[1.0, 2.0, 4.0]);
        let by_index = parse_series_csv(text, Some(&ColumnSelector::Index(1))).unwrap();
        assert_eq!(by_index, by_name);
        assert!(parse_series_csv(text, Some(&ColumnSelector::Index(5))).is_err());
        assert!(parse_series_csv(text, Some(&"nope".parse().unwrap())).is_err());
    }

    #[test]
    fn empty_inputs_fail() {
        assert!(parse_series_csv("", None).is_err());
        assert!(parse_series_csv("y\n", None).is_err());
        assert!(parse_series_csv("1\n", None).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_series_csv(Path::new("/nonexistent/series.csv"), None).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(3.183098861837907), "3.183098862");
        assert_eq!(format_float(-2.5e-7), "-2.5e-07");
        assert_eq!(format_float(12345678901.0), "1.23456789e+10");
        assert_eq!(format_float(0.000123456789012), "0.000123456789");
        assert_eq!(format_float(1e-5), "1e-05");
        assert_eq!(format_float(9999999999.5), "1e+10");
    }
}

use std::fs;
use std::path::{Path, PathBuf};

use braidsim::fit::{fit_line, LineFit};

use crate::error::CliError;

/// Writes `bytes` to `dir/name` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

/// A CSV table held in memory until it is written.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf, CliError> {
        write_atomic(dir, name, &self.to_bytes())
    }
}

/// Least-squares fit of column `y_col` against `x_col` of a CSV file with a
/// header row.
pub fn fit_slope(path: &Path, x_col: &str, y_col: &str) -> Result<LineFit, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let header = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::config(name, format!("no such column in {}", path.display())))
    };
    let (xi, yi) = (column(x_col)?, column(y_col)?);
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let parse = |i: usize, name: &str| {
            record
                .get(i)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| CliError::config(name, format!("row {} of {} is not a number", k + 1, path.display())))
        };
        x.push(parse(xi, x_col)?);
        y.push(parse(yi, y_col)?);
    }
    fit_line(&x, &y).map_err(|e| CliError::library("fit", e))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::config(&path.display().to_string(), format!("{other:?}")),
    }
}

use std::fs::File;
use std::io::Read;
use std::path::Path;

use morderstats::PointSet;

use crate::error::{CliError, Result};

/// Reads one point per row. A first row with any non-numeric field is taken
/// as a header; the dimension is the width of the first data row.
pub fn read_points(path: &Path) -> Result<PointSet> {
    let file = File::open(path).map_err(CliError::io(path))?;
    parse_points(file, path)
}

pub fn parse_points<R: Read>(reader: R, path: &Path) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let bad = |row: u64, message: String| CliError::Csv { path: path.to_path_buf(), row, message };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| {
            let row = e.position().map_or(i as u64 + 1, |p| p.line());
            bad(row, e.to_string())
        })?;
        let row = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Vec<Option<f64>> = record.iter().map(|f| f.parse::<f64>().ok()).collect();
        if i == 0 && parsed.iter().any(Option::is_none) {
            continue;
        }
        let mut values = Vec::with_capacity(parsed.len());
        for (col, (field, v)) in record.iter().zip(parsed).enumerate() {
            match v {
                Some(x) if x.is_finite() => values.push(x),
                _ => return Err(bad(row, format!("column {}: '{field}' is not a finite number", col + 1))),
            }
        }
        match width {
            None => width = Some(values.len()),
            Some(w) if w != values.len() => {
                return Err(bad(row, format!("expected {w} columns, found {}", values.len())));
            }
            _ => {}
        }
        rows.push(values);
    }
    let Some(dim) = width else {
        return Err(bad(1, "no data rows".into()));
    };
    if dim < 2 {
        return Err(CliError::Dimension(dim));
    }
    Ok(PointSet::from_rows(&rows)?)
}

/// Writes points as header-less CSV using the shortest round-trip decimal
/// form of each coordinate.
pub fn write_points<W: std::io::Write>(writer: W, rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    for row in rows {
        w.write_record(row.iter().map(|x| x.to_string())).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

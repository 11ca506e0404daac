//! Serialisation of results: branch tables as CSV, everything else as JSON.

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{LiftError, Result};
use crate::lift::LiftResult;
use crate::scalar::Scalar;

fn io_error(e: impl std::fmt::Display) -> LiftError {
    LiftError::Io(e.to_string())
}

/// Header `t, branch_1, …, branch_n`.
pub fn csv_header(n: usize) -> Vec<String> {
    std::iter::once("t".to_string()).chain((1..=n).map(|i| format!("branch_{i}"))).collect()
}

/// Writes one row per grid point: `t` followed by the branch values.
pub fn write_branches_csv<T: Scalar, W: Write>(lift: &LiftResult<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(lift.n())).map_err(io_error)?;
    for (t, row) in lift.grid.iter().zip(&lift.branches) {
        let record = std::iter::once(t.to_string()).chain(row.iter().map(T::to_string));
        w.write_record(record).map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}

/// [`write_branches_csv`] into a string.
pub fn branches_csv<T: Scalar>(lift: &LiftResult<T>) -> Result<String> {
    let mut buf = Vec::new();
    write_branches_csv(lift, &mut buf)?;
    String::from_utf8(buf).map_err(io_error)
}

/// Reads a branch table back as `(grid, rows)`.
pub fn read_branches_csv<T: Scalar, R: Read>(input: R) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(io_error)?.clone();
    let n = header.len().saturating_sub(1);
    if header.iter().collect::<Vec<_>>() != csv_header(n) {
        return Err(LiftError::InvalidInput(format!("unexpected branch table header {header:?}")));
    }
    let mut grid = Vec::new();
    let mut rows = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(io_error)?;
        let parsed: Vec<T> = record
            .iter()
            .map(|field| field.parse::<f64>().map(T::lit))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| LiftError::InvalidInput(format!("row {}: {e}", line + 1)))?;
        grid.push(parsed[0]);
        rows.push(parsed[1..].to_vec());
    }
    Ok((grid, rows))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(io_error)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::LiftMode;

    #[test]
    fn csv_round_trip() {
        let lift = LiftResult::from_rows(vec![0.0, 0.5, 1.0], vec![vec![-1.0, 1.0], vec![-0.5, 0.5], vec![0.1, 0.3]], LiftMode::C0);
        let text = branches_csv(&lift).unwrap();
        assert!(text.starts_with("t,branch_1,branch_2\n"));
        let (grid, rows): (Vec<f64>, _) = read_branches_csv(text.as_bytes()).unwrap();
        assert_eq!(grid, lift.grid);
        assert_eq!(rows, lift.branches);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_branches_csv::<f64, _>("x,y\n1,2\n".as_bytes()).is_err());
    }
}

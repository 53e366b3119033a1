//! Signals as CSV: a `t,value` header, one row per grid point, and optional
//! `#`-prefixed trailer lines for metadata.
//!
//! Values are written with 17 significant digits, so a written signal reads
//! back bit for bit.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::fracops::{Grid, Signal};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Schema { line: u64, message: String },
}

/// Grid points may deviate from `i·h` by this fraction of `t_end`.
const GRID_TOL: f64 = 1e-9;

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_signal<W: Write>(mut w: W, signal: &Signal, trailer: &[String]) -> io::Result<()> {
    writeln!(w, "t,value")?;
    for (t, v) in signal.iter() {
        writeln!(w, "{},{}", format_value(t), format_value(v))?;
    }
    for line in trailer {
        writeln!(w, "# {line}")?;
    }
    w.flush()
}

/// Read a signal written by [`write_signal`] or by hand. The times must
/// start at 0 and be uniformly spaced.
pub fn read_signal<R: Read>(r: R) -> Result<Signal, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(r);
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
        return Err(CsvError::Schema {
            line: 1,
            message: format!(
                "expected header `t,value`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut ts = Vec::new();
    let mut vs = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64, CsvError> {
            record
                .get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| CsvError::Schema {
                    line,
                    message: format!("column {} is not a finite number", i + 1),
                })
        };
        ts.push((field(0)?, line));
        vs.push(field(1)?);
    }
    if ts.len() < 2 {
        return Err(CsvError::Schema {
            line: 2,
            message: "need at least two samples".into(),
        });
    }
    let (t_end, last_line) = ts[ts.len() - 1];
    let grid = Grid::new(t_end, ts.len() - 1).map_err(|e| CsvError::Schema {
        line: last_line,
        message: e.to_string(),
    })?;
    for (i, &(t, line)) in ts.iter().enumerate() {
        if (t - grid.point(i)).abs() > GRID_TOL * t_end {
            return Err(CsvError::Schema {
                line,
                message: format!(
                    "t = {t} breaks the uniform grid starting at 0 (expected {})",
                    grid.point(i)
                ),
            });
        }
    }
    Signal::new(grid, vs).map_err(|e| CsvError::Schema {
        line: 2,
        message: e.to_string(),
    })
}

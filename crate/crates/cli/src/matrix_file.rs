//! Matrix text files: a line holding the dimension `n`, then `n` rows of `n`
//! whitespace-separated reals. Blank lines and lines starting with `#` are
//! ignored anywhere.

use std::path::Path;

use optrig::trig::{validate_spd, SpdMatrix, Tolerances, TrigError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixFileError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] TrigError),
}

/// Parses matrix text into raw rows without validation.
pub fn parse_matrix_rows(text: &str) -> Result<Vec<Vec<f64>>, MatrixFileError> {
    let fmt = |line: usize, column: usize, message: String| MatrixFileError::Format {
        line,
        column,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| fmt(1, 1, "missing dimension header".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| fmt(header_line, 1, format!("bad dimension {header:?}")))?;
    if n == 0 {
        return Err(fmt(header_line, 1, "dimension must be positive".into()));
    }

    let mut rows = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line_no, line) in lines.by_ref() {
        last_line = line_no;
        if rows.len() == n {
            return Err(fmt(line_no, 1, format!("extra row beyond declared dimension {n}")));
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<f64>()
                    .map_err(|_| fmt(line_no, col + 1, format!("not a number: {tok:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if row.len() != n {
            return Err(fmt(
                line_no,
                row.len().min(n) + 1,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(fmt(
            last_line + 1,
            1,
            format!("missing row: expected {n} rows, found {}", rows.len()),
        ));
    }
    Ok(rows)
}

pub fn parse_matrix_text(text: &str) -> Result<SpdMatrix, MatrixFileError> {
    let rows = parse_matrix_rows(text)?;
    let tol = Tolerances::default();
    Ok(validate_spd(&rows, tol.sym_tol, tol.pd_tol)?)
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<SpdMatrix, MatrixFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| MatrixFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrix_text(&text)
}

impl From<MatrixFileError> for crate::CliError {
    fn from(e: MatrixFileError) -> Self {
        match e {
            MatrixFileError::Invalid(t) => t.into(),
            other => crate::CliError::Input(other.to_string()),
        }
    }
}

//! Plain-text matrix files.
//!
//! ```text
//! # optional comment lines
//! 2 2
//! 0 1
//! -1 0
//! ```
//!
//! The first non-comment line gives ROWS COLS; each following non-comment
//! line is one row. Vectors are 1 x n files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactmat::{IntMatrix, IntVector};

#[derive(Debug, Error)]
pub enum MatFileError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: expected {expected} entries, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// A matrix together with the file it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub path: PathBuf,
    pub matrix: IntMatrix,
}

impl MatrixFile {
    pub fn read(path: impl AsRef<Path>) -> Result<Self, MatFileError> {
        let path = path.as_ref().to_path_buf();
        let text = fs::read_to_string(&path).map_err(|source| MatFileError::Io {
            path: path.clone(),
            source,
        })?;
        let matrix = parse_matrix(&text)?;
        Ok(MatrixFile { path, matrix })
    }

    pub fn write(&self) -> Result<(), MatFileError> {
        write_matrix(&self.path, &self.matrix)
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.matrix.rows(), self.matrix.cols())
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn integer(tok: &str, line: usize, column: usize) -> Result<BigInt, MatFileError> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(MatFileError::Parse {
            line,
            column,
            message: format!("expected an integer, found {tok:?}"),
        });
    }
    Ok(tok.parse().expect("validated decimal"))
}

fn dimension(tok: &str, line: usize, column: usize) -> Result<usize, MatFileError> {
    tok.parse().map_err(|_| MatFileError::Parse {
        line,
        column,
        message: format!("expected a dimension, found {tok:?}"),
    })
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, MatFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .skip_while(|(_, l)| l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or(MatFileError::Parse {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing \"ROWS COLS\" header".into(),
    })?;
    let head: Vec<(usize, &str)> = tokens(header).collect();
    if head.len() != 2 {
        return Err(MatFileError::Parse {
            line: header_no,
            column: head.get(2).map_or(1, |t| t.0),
            message: "header must be \"ROWS COLS\"".into(),
        });
    }
    let rows = dimension(head[0].1, header_no, head[0].0)?;
    let cols = dimension(head[1].1, header_no, head[1].0)?;
    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line_no, line) in lines {
        // blank lines are padding, except that rows of an R x 0 matrix are
        // themselves blank
        if line.trim().is_empty() && (cols > 0 || seen == rows) {
            continue;
        }
        if seen == rows {
            return Err(MatFileError::Parse {
                line: line_no,
                column: 1,
                message: format!("more than the declared {rows} rows"),
            });
        }
        let mut found = 0;
        for (column, tok) in tokens(line) {
            entries.push(integer(tok, line_no, column)?);
            found += 1;
        }
        if found != cols {
            return Err(MatFileError::DimensionMismatch {
                line: line_no,
                expected: cols,
                found,
            });
        }
        seen += 1;
    }
    if seen != rows {
        return Err(MatFileError::DimensionMismatch {
            line: text.lines().count() + 1,
            expected: rows,
            found: seen,
        });
    }
    Ok(IntMatrix::new(rows, cols, entries).expect("counted entries"))
}

/// Canonical text: header, then single-space separated rows, each newline
/// terminated.
pub fn format_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<IntMatrix, MatFileError> {
    MatrixFile::read(path).map(|f| f.matrix)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &IntMatrix) -> Result<(), MatFileError> {
    let path = path.as_ref();
    fs::write(path, format_matrix(m)).map_err(|source| MatFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a 1 x n file as a vector.
pub fn read_vector(path: impl AsRef<Path>) -> Result<IntVector, MatFileError> {
    let m = read_matrix(path)?;
    if m.rows() != 1 {
        return Err(MatFileError::DimensionMismatch {
            line: 1,
            expected: 1,
            found: m.rows(),
        });
    }
    Ok(IntVector(m.row(0).to_vec()))
}

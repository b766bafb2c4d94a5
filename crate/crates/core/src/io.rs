//! Plain-text matrix files.
//!
//! ```text
//! # optional comment lines start with '#'
//! 2 3
//! 1   1/2 -3
//! 0   4   7/9
//! ```
//!
//! The first non-comment line is the header `m n`; it is followed by `m`
//! lines of `n` whitespace-separated elements. The element grammar belongs to
//! the field chosen by the caller, so the same file can be read as GF(2),
//! rationals or reals. Blank lines are allowed before the header and after the
//! last row. A vector file is a matrix file with header `n 1`.

use std::fmt::Write as _;

use crate::apps::{Basis, FundamentalSubspaces};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::solver::SolutionSet;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                out.push((s, &line[s..idx]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

fn parse_dim(line_no: usize, column: usize, tok: &str, what: &str) -> Result<usize> {
    let value: usize = tok
        .parse()
        .map_err(|_| parse_error(line_no, column, format!("bad header: `{tok}` is not a {what} count")))?;
    if value == 0 {
        return Err(parse_error(line_no, column, format!("bad header: {what} count must be positive")));
    }
    Ok(value)
}

pub fn parse_matrix<F: Field>(text: &str, field: &F) -> Result<Matrix<F::Elem>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !is_comment(l));

    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_error(1, 1, "empty input: missing `m n` header"))?;
    let header_tokens = tokens(header);
    if header_tokens.len() != 2 {
        return Err(parse_error(
            header_no,
            1,
            format!("bad header: expected `m n`, got {} tokens", header_tokens.len()),
        ));
    }
    let m = parse_dim(header_no, header_tokens[0].0, header_tokens[0].1, "row")?;
    let n = parse_dim(header_no, header_tokens[1].0, header_tokens[1].1, "column")?;

    let mut data = Vec::with_capacity(m * n);
    let mut row = 0;
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        let toks = tokens(line);
        if row == m {
            if toks.is_empty() {
                continue;
            }
            return Err(parse_error(
                line_no,
                toks[0].0,
                format!("expected {m} rows, found extra data"),
            ));
        }
        row += 1;
        if toks.len() != n {
            return Err(parse_error(
                line_no,
                toks.get(n).map_or(1, |t| t.0),
                format!("row {row}: expected {n} tokens, got {}", toks.len()),
            ));
        }
        for (column, tok) in toks {
            let value = field.parse(tok).map_err(|e| match e {
                Error::Malformed { position, message } => parse_error(line_no, column + position, message),
                other => parse_error(line_no, column, format!("row {row}: {other}")),
            })?;
            data.push(value);
        }
    }
    if row < m {
        return Err(parse_error(
            last_line + 1,
            1,
            format!("expected {m} rows, got {row}"),
        ));
    }
    Matrix::new(m, n, data)
}

/// Read a column vector from a file whose header is `n 1`.
pub fn parse_vector<F: Field>(text: &str, field: &F) -> Result<Vector<F::Elem>> {
    let m = parse_matrix(text, field)?;
    if m.ncols() != 1 {
        return Err(parse_error(
            1,
            1,
            format!("vector files must have header `n 1`, got {} columns", m.ncols()),
        ));
    }
    Vector::new(m.column(0))
}

fn push_row<F: Field>(out: &mut String, field: &F, row: &[F::Elem]) {
    let line = row.iter().map(|x| field.format(x)).collect::<Vec<_>>().join(" ");
    out.push_str(&line);
    out.push('\n');
}

pub fn format_matrix<F: Field>(a: &Matrix<F::Elem>, field: &F) -> String {
    let mut out = format!("{} {}\n", a.nrows(), a.ncols());
    for row in a.rows() {
        push_row(&mut out, field, row);
    }
    out
}

pub fn format_vector<F: Field>(v: &Vector<F::Elem>, field: &F) -> String {
    let mut out = format!("{} 1\n", v.len());
    for x in v.as_slice() {
        out.push_str(&field.format(x));
        out.push('\n');
    }
    out
}

/// `BASIS k n` followed by one line per vector.
pub fn format_basis<F: Field>(b: &Basis<F::Elem>, field: &F) -> String {
    let mut out = String::new();
    if b.approximate {
        out.push_str("# approximate\n");
    }
    let _ = writeln!(out, "BASIS {} {}", b.len(), b.ambient_dim);
    for v in &b.vectors {
        push_row(&mut out, field, v.as_slice());
    }
    out
}

/// `INCONSISTENT`, or the status line, `PARTICULAR n` with the solution on
/// one line, then the null-space basis.
pub fn format_solution<F: Field>(s: &SolutionSet<F::Elem>, field: &F) -> String {
    let mut out = String::new();
    let (Some(x), Some(basis)) = (&s.particular, &s.null_basis) else {
        if s.approximate {
            out.push_str("# approximate\n");
        }
        out.push_str("INCONSISTENT\n");
        return out;
    };
    if s.approximate {
        out.push_str("# approximate\n");
    }
    let _ = writeln!(out, "{}", s.status);
    let _ = writeln!(out, "PARTICULAR {}", x.len());
    push_row(&mut out, field, x.as_slice());
    let basis = Basis {
        approximate: false,
        ..basis.clone()
    };
    out.push_str(&format_basis(&basis, field));
    out
}

pub fn format_subspaces<F: Field>(s: &FundamentalSubspaces<F::Elem>, field: &F) -> String {
    let mut out = String::new();
    if s.row_space.approximate {
        out.push_str("# approximate\n");
    }
    let _ = writeln!(out, "RANK {}", s.rank);
    for (title, basis) in [
        ("ROW_SPACE", &s.row_space),
        ("COLUMN_SPACE", &s.col_space),
        ("NULL_SPACE", &s.null_space),
        ("LEFT_NULL_SPACE", &s.left_null_space),
    ] {
        out.push_str(title);
        out.push('\n');
        let basis = Basis {
            approximate: false,
            ..basis.clone()
        };
        out.push_str(&format_basis(&basis, field));
    }
    out
}

//! Coxeter matrix files: a line `n`, then `n` rows of `n` integers. The
//! diagonal is 1, off-diagonal entries are 0 (infinity) or at least 2, and
//! the matrix is symmetric. `#` lines and blank lines are ignored.

use std::fmt::Write as _;

use super::{CoxeterError, CoxeterMatrix, Label};

fn parse_err(line: usize, message: impl Into<String>) -> CoxeterError {
    CoxeterError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_coxeter(text: &str) -> Result<CoxeterMatrix, CoxeterError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(hline, format!("header must be the generator count, found `{header}`")))?;

    let mut rows: Vec<(usize, Vec<u32>)> = Vec::with_capacity(n);
    let mut last = hline;
    for (line, content) in lines {
        last = line;
        if rows.len() == n {
            return Err(parse_err(line, format!("more than {n} rows")));
        }
        let row = rows.len();
        let entries = content
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<u32>().map_err(|_| {
                    parse_err(line, format!("row {row}, column {col}: expected an integer, found `{tok}`"))
                })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        if entries.len() != n {
            return Err(parse_err(
                line,
                format!("row {row} has {} entries, expected {n}", entries.len()),
            ));
        }
        for (col, &v) in entries.iter().enumerate() {
            if col == row && v != 1 {
                return Err(parse_err(line, format!("row {row}, column {col}: diagonal entry must be 1, found {v}")));
            }
            if col != row && v == 1 {
                return Err(parse_err(
                    line,
                    format!("row {row}, column {col}: off-diagonal entry must be 0 or at least 2, found 1"),
                ));
            }
        }
        rows.push((line, entries));
    }
    if rows.len() != n {
        return Err(parse_err(last, format!("expected {n} rows, found {}", rows.len())));
    }
    for s in 0..n {
        for t in 0..s {
            if rows[s].1[t] != rows[t].1[s] {
                return Err(parse_err(
                    rows[s].0,
                    format!(
                        "not symmetric: entry ({s},{t}) = {} but ({t},{s}) = {}",
                        rows[s].1[t], rows[t].1[s]
                    ),
                ));
            }
        }
    }
    CoxeterMatrix::from_fn(n, |s, t| match rows[s].1[t] {
        0 => Label::Infinite,
        m => Label::Finite(m),
    })
}

pub fn write_coxeter(m: &CoxeterMatrix) -> String {
    let n = m.n();
    let mut out = format!("{n}\n");
    for s in 0..n {
        let row: Vec<String> = (0..n)
            .map(|t| match m.label(s, t) {
                Label::Infinite => "0".to_string(),
                Label::Finite(v) => v.to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

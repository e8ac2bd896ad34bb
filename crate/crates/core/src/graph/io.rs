//! Text formats for graphs.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `u < v`.
//! Adjacency matrix: a header line `n`, then `n` rows of `n` symbols `0`/`1`,
//! symmetric with a zero diagonal. Lines starting with `#` and blank lines
//! are ignored in both. The header decides the format.

use std::fmt::Write as _;

use super::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Yields `(1-based line number, trimmed content)` for meaningful lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    match head.as_slice() {
        [n, m] => {
            let n = parse_usize(hline, n)?;
            let m = parse_usize(hline, m)?;
            parse_edge_body(n, m, hline, lines)
        }
        [n] => {
            let n = parse_usize(hline, n)?;
            parse_matrix_body(n, hline, lines)
        }
        _ => Err(parse_err(
            hline,
            "header must be `n m` (edge list) or `n` (adjacency matrix)",
        )),
    }
}

fn parse_edge_body<'a>(
    n: usize,
    m: usize,
    hline: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last = hline;
    for (line, content) in lines {
        last = line;
        let toks: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(parse_err(line, "expected an edge `u v`"));
        };
        let (u, v) = (parse_usize(line, u)?, parse_usize(line, v)?);
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(line, format!("edge `{u} {v}` must be written with u < v")));
        }
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("duplicate edge `{u} {v}`")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("header announces {m} edges but {} were given", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

fn parse_matrix_body<'a>(
    n: usize,
    hline: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph, GraphError> {
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::with_capacity(n);
    for (line, content) in lines {
        if rows.len() == n {
            return Err(parse_err(line, format!("more than {n} matrix rows")));
        }
        let row = content
            .split_whitespace()
            .map(|tok| match tok {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(parse_err(line, format!("expected 0 or 1, found `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push((line, row));
    }
    if rows.len() != n {
        let line = rows.last().map_or(hline, |(l, _)| *l);
        return Err(parse_err(line, format!("expected {n} rows, found {}", rows.len())));
    }
    for (i, (line, row)) in rows.iter().enumerate() {
        if row[i] {
            return Err(parse_err(*line, format!("nonzero diagonal entry at ({i}, {i})")));
        }
        for j in 0..i {
            if row[j] != rows[j].1[i] {
                return Err(parse_err(*line, format!("matrix not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(Graph::from_fn(n, |u, v| rows[u].1[v]))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_adjacency_matrix(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for u in 0..g.n() {
        let row: Vec<&str> = (0..g.n())
            .map(|v| if g.adjacent(u, v) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

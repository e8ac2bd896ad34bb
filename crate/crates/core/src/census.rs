//! Exhaustive census of labelled graphs on `n <= 9` vertices: the number
//! `t(n)` of thick graphs and the clique total `c(n)` over them.
//!
//! Graph `i` fills the lower triangle in row order: for `j` in `0..n`, for
//! `k < j`, `adj[j][k]` is the next low bit of `i`. The clique total counts
//! every clique with at least two vertices, plus `n + 1` per thick graph
//! for the empty clique and the singletons.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;

pub const CENSUS_LIMIT: usize = 9;
pub const DEFAULT_CHUNK: u64 = 1 << 30;
const BLOCK: u64 = 1 << 14;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census is limited to n <= {CENSUS_LIMIT}, got {0}")]
    TooLarge(usize),
    #[error("checkpoint line {line}: {message}")]
    Checkpoint { line: usize, message: String },
    #[error("checkpoint is for n = {found}, but the census was asked for n = {expected}")]
    Mismatch { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub t: u64,
    pub c: u64,
    pub graphs_scanned: u64,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Append-only progress file; resumed if it exists.
    pub checkpoint: Option<PathBuf>,
    /// Indices per checkpointed range.
    pub chunk: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: 0,
            checkpoint: None,
            chunk: DEFAULT_CHUNK,
        }
    }
}

/// Lower-triangle pairs `(j, k)`, `k < j`, in index-bit order.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |k| (j, k))).collect()
}

/// The graph with census index `i`.
pub fn graph_from_index(n: usize, i: u64) -> Graph {
    let pairs = pair_order(n);
    Graph::from_edges(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|&(b, _)| i >> b & 1 == 1)
            .map(|(_, &(j, k))| (k, j)),
    )
    .expect("pairs are distinct and in range")
}

fn adjacency(pairs: &[(usize, usize)], i: u64, adj: &mut [u16]) {
    adj.iter_mut().for_each(|a| *a = 0);
    for (b, &(j, k)) in pairs.iter().enumerate() {
        if i >> b & 1 == 1 {
            adj[j] |= 1 << k;
            adj[k] |= 1 << j;
        }
    }
}

fn has_nonadjacent_pair(mask: u16, adj: &[u16]) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if rest & !adj[v] != 0 {
            return true;
        }
    }
    false
}

/// Whether the thick closure of the graph reaches the whole vertex set.
fn spans(n: usize, adj: &[u16]) -> bool {
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut members: Vec<u16> = Vec::new();
    for u in 0..n {
        let mut others = full & !adj[u] & !((2u16 << u).wrapping_sub(1));
        while others != 0 {
            let w = others.trailing_zeros() as usize;
            others &= others - 1;
            let common = adj[u] & adj[w];
            if !has_nonadjacent_pair(common, adj) {
                continue;
            }
            let mut t = common | 1 << u | 1 << w;
            if members.iter().any(|&m| t & !m == 0) {
                continue;
            }
            loop {
                let mut grew = true;
                while grew {
                    grew = false;
                    let mut outside = full & !t;
                    while outside != 0 {
                        let v = outside.trailing_zeros() as usize;
                        outside &= outside - 1;
                        if has_nonadjacent_pair(adj[v] & t, adj) {
                            t |= 1 << v;
                            grew = true;
                        }
                    }
                }
                match members.iter().position(|&m| has_nonadjacent_pair(m & t, adj)) {
                    Some(pos) => t |= members.swap_remove(pos),
                    None => break,
                }
            }
            if t == full {
                return true;
            }
            members.retain(|&m| m & !t != 0);
            members.push(t);
        }
    }
    false
}

/// Cliques with at least two vertices.
fn cliques_ge2(n: usize, adj: &[u16]) -> u64 {
    fn extend(cands: u16, adj: &[u16]) -> u64 {
        let mut total = 0;
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += 1 + extend(rest & adj[v], adj);
        }
        total
    }
    (0..n)
        .map(|v| extend(adj[v] & !((2u16 << v).wrapping_sub(1)), adj))
        .sum()
}

/// `(t, c)` contributions of indices `start..end`.
fn scan(n: usize, start: u64, end: u64) -> (u64, u64) {
    let pairs = pair_order(n);
    let mut adj = vec![0u16; n];
    let (mut t, mut c) = (0u64, 0u64);
    for i in start..end {
        adjacency(&pairs, i, &mut adj);
        if spans(n, &adj) {
            t += 1;
            c += cliques_ge2(n, &adj) + n as u64 + 1;
        }
    }
    (t, c)
}

fn scan_parallel(n: usize, start: u64, end: u64) -> (u64, u64) {
    let blocks: Vec<u64> = (start..end).step_by(BLOCK as usize).collect();
    blocks
        .par_iter()
        .map(|&b| scan(n, b, (b + BLOCK).min(end)))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

pub fn census(n: usize, workers: usize) -> Result<CensusResult, CensusError> {
    census_with(
        n,
        &CensusOptions {
            workers,
            ..CensusOptions::default()
        },
    )
}

pub fn census_with(n: usize, opts: &CensusOptions) -> Result<CensusResult, CensusError> {
    if n > CENSUS_LIMIT {
        return Err(CensusError::TooLarge(n));
    }
    let total: u64 = 1 << (n * n.saturating_sub(1) / 2);
    let chunk = opts.chunk.max(1);
    let mut done: BTreeMap<u64, (u64, u64, u64)> = BTreeMap::new();
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let prior = read_checkpoint(path, n)?;
            if let Some(r) = prior.result {
                return Ok(r);
            }
            done = prior.ranges;
        }
    }
    let mut log = match &opts.checkpoint {
        Some(path) => Some(OpenOptions::new().create(true).append(true).open(path)?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;

    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        if !done.contains_key(&start) {
            let (t, c) = pool.install(|| scan_parallel(n, start, end));
            if let Some(f) = log.as_mut() {
                writeln!(f, "{n} {start} {end} {t} {c}")?;
                f.flush()?;
            }
            done.insert(start, (end, t, c));
        }
        start = end;
    }
    let (t, c) = done.values().fold((0, 0), |acc, &(_, t, c)| (acc.0 + t, acc.1 + c));
    let result = CensusResult {
        n,
        t,
        c,
        graphs_scanned: total,
    };
    if let Some(f) = log.as_mut() {
        writeln!(f, "RESULT {n} {t} {c}")?;
    }
    Ok(result)
}

struct Checkpoint {
    ranges: BTreeMap<u64, (u64, u64, u64)>,
    result: Option<CensusResult>,
}

fn read_checkpoint(path: &PathBuf, n: usize) -> Result<Checkpoint, CensusError> {
    let total: u64 = 1 << (n * n.saturating_sub(1) / 2);
    let mut out = Checkpoint {
        ranges: BTreeMap::new(),
        result: None,
    };
    for (idx, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        let bad = |message: &str| CensusError::Checkpoint {
            line: idx + 1,
            message: message.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let nums = |s: &[&str]| -> Result<Vec<u64>, CensusError> {
            s.iter()
                .map(|t| t.parse::<u64>().map_err(|_| bad(&format!("`{t}` is not a number"))))
                .collect()
        };
        match toks.as_slice() {
            ["RESULT", rest @ ..] if rest.len() == 3 => {
                let v = nums(rest)?;
                if v[0] as usize != n {
                    return Err(CensusError::Mismatch { expected: n, found: v[0] as usize });
                }
                out.result = Some(CensusResult {
                    n,
                    t: v[1],
                    c: v[2],
                    graphs_scanned: total,
                });
            }
            rest if rest.len() == 5 => {
                let v = nums(rest)?;
                if v[0] as usize != n {
                    return Err(CensusError::Mismatch { expected: n, found: v[0] as usize });
                }
                if v[1] >= v[2] || v[2] > total {
                    return Err(bad("range is empty or beyond the index space"));
                }
                out.ranges.insert(v[1], (v[2], v[3], v[4]));
            }
            _ => return Err(bad("expected `n start end partial_t partial_c` or `RESULT n t c`")),
        }
    }
    Ok(out)
}

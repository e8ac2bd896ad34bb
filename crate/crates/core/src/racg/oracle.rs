//! Definitional membership test over all vertex subsets.
//!
//! A subset is derivable when it induces a square, is a derivable subset
//! plus a vertex whose link in it has a non-adjacent pair, or is the union
//! of two derivable subsets whose intersection has a non-adjacent pair.
//! Exponential in `n`; meant as a cross-check for the fixed point.

use super::RacgError;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_ORACLE_LIMIT: usize = 7;
const HARD_LIMIT: usize = 20;

/// Derivability flag for every subset of the vertex set, indexed by mask.
#[derive(Debug, Clone)]
pub struct DerivableSubsets {
    n: usize,
    derivable: Vec<bool>,
}

impl DerivableSubsets {
    pub fn compute(g: &Graph, limit: usize) -> Result<Self, RacgError> {
        let n = g.n();
        let limit = limit.min(HARD_LIMIT);
        if n > limit {
            return Err(RacgError::TooLarge {
                what: "the subset oracle",
                n,
                limit,
            });
        }
        let size = 1usize << n;
        let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).low_mask() as u32).collect();
        // nonclique[m]: m contains two non-adjacent vertices.
        let mut nonclique = vec![false; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            let rest = m & (m - 1);
            nonclique[m] = nonclique[rest] || (rest as u32 & !adj[low]) != 0;
        }
        let mut derivable = vec![false; size];
        let mut found: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for m in 0..size {
            if m.count_ones() == 4 && induces_square(m as u32, &adj) {
                derivable[m] = true;
                queue.push(m);
            }
        }
        while let Some(x) = queue.pop() {
            found.push(x);
            for v in 0..n {
                let bit = 1usize << v;
                if x & bit == 0 && nonclique[x & adj[v] as usize] && !derivable[x | bit] {
                    derivable[x | bit] = true;
                    queue.push(x | bit);
                }
            }
            for &y in &found {
                let u = x | y;
                if nonclique[x & y] && !derivable[u] {
                    derivable[u] = true;
                    queue.push(u);
                }
            }
        }
        Ok(DerivableSubsets { n, derivable })
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.derivable[s.low_mask() as usize]
    }

    pub fn full_set_derivable(&self) -> bool {
        self.derivable[(1usize << self.n) - 1]
    }

    /// Derivable subsets not contained in another derivable subset.
    pub fn maximal(&self) -> Vec<VertexSet> {
        let all: Vec<usize> = (0..self.derivable.len()).filter(|&m| self.derivable[m]).collect();
        let mut out: Vec<VertexSet> = all
            .iter()
            .filter(|&&m| !all.iter().any(|&o| o != m && o & m == m))
            .map(|&m| VertexSet::from_mask(self.n, m as u64))
            .collect();
        out.sort();
        out
    }
}

/// Four vertices, each adjacent to exactly two of the others, four edges.
fn induces_square(m: u32, adj: &[u32]) -> bool {
    let mut bits = m;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if (adj[v] & m).count_ones() != 2 {
            return false;
        }
    }
    true
}

/// Whether the whole graph is thick-derivable, for `n <= 7`.
pub fn oracle_in_t(g: &Graph) -> Result<bool, RacgError> {
    Ok(DerivableSubsets::compute(g, DEFAULT_ORACLE_LIMIT)?.full_set_derivable())
}

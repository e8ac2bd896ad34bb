//! The straightforward polynomial routine: list every induced square,
//! then alternate full union and coning passes until nothing changes.
//!
//! Roughly `O(n^15)` in the worst case. Kept as a cross-check for the
//! incremental fixed point, with an optional random order of operations
//! for confluence testing.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::RacgError;
use crate::graph::{Graph, VertexSet};

pub const REFERENCE_LIMIT: usize = 30;

/// All induced squares by a scan over ordered 4-tuples.
pub fn naive_squares(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            if g.adjacent(v, w) {
                continue;
            }
            for t in 0..n {
                for u in t + 1..n {
                    if [v, w].contains(&t) || [v, w].contains(&u) || g.adjacent(t, u) {
                        continue;
                    }
                    if g.adjacent(u, v) && g.adjacent(u, w) && g.adjacent(t, v) && g.adjacent(t, w) {
                        let s = VertexSet::from_vertices(n, [v, w, t, u]);
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Maximal members after the union/coning passes. With `shuffle`, every
/// pass visits members, pairs and vertices in a random order.
pub fn reference_fixed_point(g: &Graph, shuffle: Option<u64>) -> Result<Vec<VertexSet>, RacgError> {
    let n = g.n();
    if n > REFERENCE_LIMIT {
        return Err(RacgError::TooLarge {
            what: "the reference fixed point",
            n,
            limit: REFERENCE_LIMIT,
        });
    }
    let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
    let nonadjacent: Vec<(usize, usize)> = g.missing_edges();
    let mut pool = naive_squares(g);
    loop {
        let mut changed = false;

        // Union: merge two members whose intersection has a non-adjacent pair.
        let mut order: Vec<(usize, usize)> = (0..pool.len())
            .flat_map(|i| (i + 1..pool.len()).map(move |j| (i, j)))
            .collect();
        if let Some(r) = rng.as_mut() {
            order.shuffle(r);
        }
        for (i, j) in order {
            if i >= pool.len() || j >= pool.len() || pool[i].is_empty() || pool[j].is_empty() {
                continue;
            }
            let meet = pool[i].intersection(&pool[j]);
            if nonadjacent.iter().any(|&(a, b)| meet.contains(a) && meet.contains(b)) {
                let other = std::mem::take(&mut pool[j]);
                pool[i].union_with(&other);
                changed = true;
            }
        }
        pool.retain(|m| !m.is_empty());

        // Coning: add a vertex adjacent to two non-adjacent vertices of a member.
        let mut members: Vec<usize> = (0..pool.len()).collect();
        let mut vertices: Vec<usize> = (0..n).collect();
        if let Some(r) = rng.as_mut() {
            members.shuffle(r);
            vertices.shuffle(r);
        }
        for &i in &members {
            for &v in &vertices {
                if pool[i].contains(v) {
                    continue;
                }
                let cones = nonadjacent.iter().any(|&(a, b)| {
                    pool[i].contains(a) && pool[i].contains(b) && g.adjacent(v, a) && g.adjacent(v, b)
                });
                if cones {
                    pool[i].insert(v);
                    changed = true;
                }
            }
        }

        // Drop members contained in others, and duplicates.
        let before = pool.len();
        pool.sort();
        pool.dedup();
        let snapshot = pool.clone();
        pool.retain(|m| !snapshot.iter().any(|o| o != m && m.is_subset(o)));
        changed |= pool.len() != before;

        if !changed {
            break;
        }
    }
    pool.sort();
    Ok(pool)
}

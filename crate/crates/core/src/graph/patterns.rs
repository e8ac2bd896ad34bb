//! Induced-pattern searches (squares, `K_{2,3}`), clique counting and
//! separating cliques.

use std::ops::ControlFlow;

use super::{Graph, VertexSet};

/// Outcome of a separating-clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// The graph is already disconnected, so the empty clique separates it.
    Disconnected,
    /// Removing this clique leaves at least two components.
    SeparatingClique(VertexSet),
    NoSeparatingClique,
}

impl Graph {
    /// Calls `visit(u, w, common)` for every non-adjacent pair `u < w` with
    /// at least one common neighbour. `common` is ascending.
    ///
    /// Pairs are bucketed per `u` by walking two-step paths `u - v - w`, so
    /// the cost is the number of such paths rather than `n^2`.
    pub fn for_each_common_neighborhood<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(usize, usize, &[u32]) -> ControlFlow<()>,
    {
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        let mut touched: Vec<usize> = Vec::new();
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                for &w in &self.nbrs[v as usize] {
                    let w = w as usize;
                    if w <= u || self.adj[u].contains(w) {
                        continue;
                    }
                    if buckets[w].is_empty() {
                        touched.push(w);
                    }
                    buckets[w].push(v);
                }
            }
            touched.sort_unstable();
            let mut flow = ControlFlow::Continue(());
            for &w in &touched {
                if flow.is_continue() {
                    flow = visit(u, w, &buckets[w]);
                }
                buckets[w].clear();
            }
            touched.clear();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// A non-adjacent pair inside the vertex list `verts`, if any.
    pub(crate) fn nonadjacent_pair_in(&self, verts: &[u32]) -> Option<(usize, usize)> {
        for (i, &a) in verts.iter().enumerate() {
            let row = &self.adj[a as usize];
            if let Some(&b) = verts[i + 1..].iter().find(|&&b| !row.contains(b as usize)) {
                return Some((a as usize, b as usize));
            }
        }
        None
    }

    /// Every vertex set inducing a 4-cycle, each listed once as an
    /// ascending quadruple; the list itself is sorted.
    pub fn induced_k22_list(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        let _ = self.for_each_common_neighborhood(|u, w, common| {
            for (i, &t) in common.iter().enumerate() {
                for &x in &common[i + 1..] {
                    let (t, x) = (t as usize, x as usize);
                    // The square has two diagonals; report it from the
                    // lexicographically smaller one.
                    if !self.adjacent(t, x) && (u, w) < (t, x) {
                        let mut q = [u, w, t, x];
                        q.sort_unstable();
                        out.push(q);
                    }
                }
            }
            ControlFlow::Continue(())
        });
        out.sort_unstable();
        out
    }

    pub fn has_induced_k22(&self) -> bool {
        self.for_each_common_neighborhood(|_, _, common| {
            if common.len() >= 2 && self.nonadjacent_pair_in(common).is_some() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
    }

    /// True iff some five vertices induce `K_{2,3}`: a non-adjacent pair
    /// whose common neighbourhood contains three pairwise non-adjacent
    /// vertices.
    pub fn contains_induced_k23(&self) -> bool {
        self.for_each_common_neighborhood(|_, _, common| {
            if common.len() >= 3 && self.has_independent_triple(common) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
    }

    fn has_independent_triple(&self, verts: &[u32]) -> bool {
        let pool = VertexSet::from_vertices(self.n, verts.iter().map(|&v| v as usize));
        verts.iter().any(|&t| {
            let mut rest = pool.difference(&self.adj[t as usize]);
            rest.remove(t as usize);
            rest.len() >= 2 && self.nonadjacent_pair(&rest).is_some()
        })
    }

    /// Number of vertex subsets of size at least two that induce complete
    /// subgraphs. Cliques are grown by appending larger adjacent vertices,
    /// so each is counted exactly once.
    pub fn count_cliques_ge2(&self) -> u64 {
        (0..self.n)
            .map(|v| {
                let mut cands = self.adj[v].clone();
                clear_upto(&mut cands, v);
                self.extend_cliques(&cands)
            })
            .sum()
    }

    fn extend_cliques(&self, cands: &VertexSet) -> u64 {
        let mut total = 0;
        for v in cands.iter() {
            let mut next = cands.intersection(&self.adj[v]);
            clear_upto(&mut next, v);
            total += 1 + if next.is_empty() {
                0
            } else {
                self.extend_cliques(&next)
            };
        }
        total
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        self.max_clique(&VertexSet::full(self.n), 0, &mut best);
        best
    }

    fn max_clique(&self, cands: &VertexSet, size: usize, best: &mut usize) {
        if cands.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let mut cands = cands.clone();
        while let Some(v) = cands.first() {
            if size + cands.len() <= *best {
                return;
            }
            cands.remove(v);
            let next = cands.intersection(&self.adj[v]);
            self.max_clique(&next, size + 1, best);
        }
    }

    /// `1 + max_v ω(N(v))`, capped at 20. This is the clique number for any
    /// graph with an edge.
    pub fn default_separating_clique_bound(&self) -> usize {
        let mut best = 0;
        for v in 0..self.n {
            let mut inner = 0;
            self.max_clique(self.neighbors(v), 0, &mut inner);
            best = best.max(inner);
        }
        (best + 1).min(20)
    }

    /// Searches for a clique of at most `max_clique_size` vertices whose
    /// removal disconnects the graph.
    pub fn has_separating_clique(&self, max_clique_size: usize) -> Separation {
        if !self.is_connected() {
            return Separation::Disconnected;
        }
        let mut found = None;
        let mut clique = VertexSet::new(self.n);
        let full = VertexSet::full(self.n);
        // Smallest cliques first, so the witness has minimum size.
        for size in 1..=max_clique_size.min(self.n) {
            if self
                .separating_search(&full, &mut clique, size, &mut found)
                .is_break()
            {
                break;
            }
        }
        match found {
            Some(c) => Separation::SeparatingClique(c),
            None => Separation::NoSeparatingClique,
        }
    }

    fn separating_search(
        &self,
        cands: &VertexSet,
        clique: &mut VertexSet,
        remaining: usize,
        found: &mut Option<VertexSet>,
    ) -> ControlFlow<()> {
        for v in cands.iter() {
            clique.insert(v);
            if remaining == 1 {
                let rest = VertexSet::full(self.n).difference(clique);
                if self.parts_within(&rest) >= 2 {
                    *found = Some(clique.clone());
                    return ControlFlow::Break(());
                }
            } else {
                let mut next = cands.intersection(&self.adj[v]);
                clear_upto(&mut next, v);
                self.separating_search(&next, clique, remaining - 1, found)?;
            }
            clique.remove(v);
        }
        ControlFlow::Continue(())
    }

    /// Number of connected components of the subgraph induced on `allowed`.
    fn parts_within(&self, allowed: &VertexSet) -> usize {
        let mut unseen = allowed.clone();
        let mut parts = 0;
        while let Some(root) = unseen.first() {
            parts += 1;
            unseen.remove(root);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let fresh = unseen.intersection(&self.adj[v]);
                unseen.difference_with(&fresh);
                stack.extend(fresh.iter());
            }
        }
        parts
    }
}

/// Removes every member `<= v`.
fn clear_upto(s: &mut VertexSet, v: usize) {
    // Members are dropped one at a time; candidate sets here are sparse.
    while let Some(x) = s.first() {
        if x > v {
            break;
        }
        s.remove(x);
    }
}

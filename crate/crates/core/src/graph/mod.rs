//! Finite simplicial graphs with bit-packed adjacency.
//!
//! A [`Graph`] is immutable once built. Every query is a pure function of
//! the graph, so a single instance can be shared across threads.

mod io;
mod patterns;
mod set;

pub use io::{parse_graph, write_adjacency_matrix, write_edge_list};
pub use patterns::Separation;
pub use set::{Iter, VertexSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}; graphs are simplicial")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite simplicial graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    nbrs: Vec<Vec<u32>>,
    edges: usize,
}

/// The bundle of per-subset queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphQueries {
    pub induced: InducedSubgraph,
    pub is_clique: bool,
    pub nonadjacent_pair: Option<(usize, usize)>,
}

/// An induced subgraph relabelled onto `0..k`; `vertices[i]` is the
/// original name of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentShape {
    pub size: usize,
    pub edges: usize,
    pub is_tree: bool,
    pub is_unicyclic: bool,
}

/// Whole-graph structure: connectivity of the graph and its complement,
/// universal vertices and missing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub components: Vec<VertexSet>,
    pub complement_components: Vec<VertexSet>,
    pub universal_vertices: VertexSet,
    pub missing_edges: Vec<(usize, usize)>,
    pub component_census: Vec<ComponentShape>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
            nbrs: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. Edge orientation is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![VertexSet::new(n); n];
        let mut count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !adj[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
            count += 1;
        }
        Ok(Self::from_rows(n, adj, count))
    }

    /// Builds a graph by asking `edge(u, v)` once for each pair `u < v`,
    /// in row-major order.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(n: usize, mut edge: F) -> Self {
        let mut adj = vec![VertexSet::new(n); n];
        let mut count = 0;
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    adj[u].insert(v);
                    adj[v].insert(u);
                    count += 1;
                }
            }
        }
        Self::from_rows(n, adj, count)
    }

    fn from_rows(n: usize, adj: Vec<VertexSet>, edges: usize) -> Self {
        let nbrs = adj
            .iter()
            .map(|row| row.iter().map(|v| v as u32).collect())
            .collect();
        Graph {
            n,
            adj,
            nbrs,
            edges,
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Cycle `0-1-..-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |u, v| v == u + 1)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_fn(a + b, |u, v| u < a && v >= a)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let k = self.n;
        Graph::from_fn(self.n + other.n, |u, v| {
            if v < k {
                self.adjacent(u, v)
            } else if u >= k {
                other.adjacent(u - k, v - k)
            } else {
                false
            }
        })
    }

    /// Join: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let k = self.n;
        Graph::from_fn(self.n + other.n, |u, v| {
            if v < k {
                self.adjacent(u, v)
            } else if u >= k {
                other.adjacent(u - k, v - k)
            } else {
                true
            }
        })
    }

    /// Same vertex set with the edge relation inverted.
    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.adjacent(u, v))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Panics if either vertex is out of range.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_list(&self, v: usize) -> &[u32] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) if v >= self.n => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// The induced subgraph on `s`, with its vertex relabelling.
    pub fn induced(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        self.check_set(s)?;
        let vertices = s.to_vec();
        let graph = Graph::from_fn(vertices.len(), |i, j| {
            self.adjacent(vertices[i], vertices[j])
        });
        Ok(InducedSubgraph { graph, vertices })
    }

    /// Some pair of distinct non-adjacent members of `s`, if any.
    ///
    /// The first vertex of the witness is the smallest member that has a
    /// non-neighbour in `s`; the second is its smallest such non-neighbour.
    pub fn nonadjacent_pair(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for u in s.iter() {
            let mut rest = s.difference(&self.adj[u]);
            rest.remove(u);
            if let Some(w) = rest.first() {
                return Some((u.min(w), u.max(w)));
            }
        }
        None
    }

    /// True iff every pair in `s` is adjacent (vacuous for `|s| <= 1`).
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        self.nonadjacent_pair(s).is_none()
    }

    /// Neighbours of `v` inside `s`.
    pub fn link_in(&self, v: usize, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        self.check_set(s)?;
        Ok(self.adj[v].intersection(s))
    }

    pub fn subgraph_queries(&self, s: &VertexSet) -> Result<SubgraphQueries, GraphError> {
        let induced = self.induced(s)?;
        let nonadjacent_pair = self.nonadjacent_pair(s);
        Ok(SubgraphQueries {
            induced,
            is_clique: nonadjacent_pair.is_none(),
            nonadjacent_pair,
        })
    }

    /// Connected components, each listed once, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_by(|v, unseen| unseen.intersection(&self.adj[v]))
    }

    /// Components of the edge-complement. A graph is a nontrivial join
    /// exactly when this has more than one part.
    pub fn complement_components(&self) -> Vec<VertexSet> {
        self.components_by(|v, unseen| {
            let mut next = unseen.difference(&self.adj[v]);
            next.remove(v);
            next
        })
    }

    fn components_by<F>(&self, step: F) -> Vec<VertexSet>
    where
        F: Fn(usize, &VertexSet) -> VertexSet,
    {
        let mut unseen = VertexSet::full(self.n);
        let mut parts = Vec::new();
        while let Some(root) = unseen.first() {
            unseen.remove(root);
            let mut part = VertexSet::new(self.n);
            part.insert(root);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let fresh = step(v, &unseen);
                unseen.difference_with(&fresh);
                for w in fresh.iter() {
                    part.insert(w);
                    stack.push(w);
                }
            }
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.n,
            (0..self.n).filter(|&v| self.degree(v) + 1 == self.n),
        )
    }

    /// Number of unordered non-adjacent pairs, `C(n,2) - |E|`.
    pub fn missing_edge_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.edges
    }

    pub fn missing_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.missing_edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Per-component size, edge count and tree/unicyclic shape, in the
    /// order of [`Graph::components`].
    pub fn component_census(&self) -> Vec<ComponentShape> {
        self.components()
            .iter()
            .map(|c| {
                let size = c.len();
                let degree_sum: usize = c.iter().map(|v| self.degree(v)).sum();
                let edges = degree_sum / 2;
                ComponentShape {
                    size,
                    edges,
                    is_tree: edges + 1 == size,
                    is_unicyclic: edges == size,
                }
            })
            .collect()
    }

    pub fn structure_queries(&self) -> StructureReport {
        StructureReport {
            components: self.components(),
            complement_components: self.complement_components(),
            universal_vertices: self.universal_vertices(),
            missing_edges: self.missing_edges(),
            component_census: self.component_census(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

//! Thickness of right-angled Coxeter groups, decided on the presentation
//! graph.
//!
//! The thick class is generated by induced squares under two operations:
//! coning (add a vertex adjacent to two non-adjacent vertices of a member)
//! and union (merge two members sharing a non-adjacent pair). The maximal
//! members of the closure are the peripheral vertex sets; the group is
//! thick exactly when one member spans the whole graph.

mod oracle;
mod pool;
pub mod reference;

pub use oracle::{oracle_in_t, DerivableSubsets, DEFAULT_ORACLE_LIMIT};
pub use pool::{PoolEvent, SeedOrder};

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::Status;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RacgError {
    #[error("{what} is limited to {limit} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

/// Maximal members of the thick closure of a graph, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThickPool {
    members: Vec<VertexSet>,
}

impl ThickPool {
    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<VertexSet> {
        self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True iff some member is the whole vertex set `0..n`.
    pub fn spans(&self, n: usize) -> bool {
        self.members.iter().any(|m| m.len() == n)
    }
}

pub fn thick_fixed_point(g: &Graph) -> ThickPool {
    thick_fixed_point_ordered(g, SeedOrder::Natural)
}

pub fn thick_fixed_point_ordered(g: &Graph, order: SeedOrder) -> ThickPool {
    let (members, _) = pool::Closure::run(g, order, false);
    ThickPool { members }
}

/// The fixed point together with the derivation log.
pub fn thick_fixed_point_traced(g: &Graph) -> (ThickPool, Vec<PoolEvent>) {
    let (members, trace) = pool::Closure::run(g, SeedOrder::Natural, true);
    (ThickPool { members }, trace.unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RacgReport {
    pub status: Status,
    /// Whether the graph splits as a join of two non-cliques times a
    /// clique. Only set for thick graphs.
    pub order0: bool,
    /// Nonempty exactly for relatively hyperbolic groups.
    pub peripherals: Vec<VertexSet>,
    pub pool_trace: Option<Vec<PoolEvent>>,
}

/// Classifies `W_Γ`. Precedence: complete graph (finite), one missing edge
/// (virtually cyclic), spanning pool member (thick), empty pool
/// (hyperbolic), otherwise relatively hyperbolic with the pool members as
/// peripherals.
pub fn classify_racg(g: &Graph) -> RacgReport {
    classify_with(g, false)
}

pub fn classify_racg_traced(g: &Graph) -> RacgReport {
    classify_with(g, true)
}

fn classify_with(g: &Graph, trace: bool) -> RacgReport {
    let report = |status, order0, peripherals, pool_trace| RacgReport {
        status,
        order0,
        peripherals,
        pool_trace,
    };
    match g.missing_edge_count() {
        0 => return report(Status::Finite, false, Vec::new(), None),
        1 => return report(Status::VirtuallyCyclic, false, Vec::new(), None),
        _ => {}
    }
    let (members, log) = pool::Closure::run(g, SeedOrder::Natural, trace);
    let pool = ThickPool { members };
    if pool.spans(g.n()) {
        report(Status::Thick, is_thick_order0(g), Vec::new(), log)
    } else if pool.is_empty() {
        report(Status::Hyperbolic, false, Vec::new(), log)
    } else {
        report(Status::RelativelyHyperbolic, false, pool.into_members(), log)
    }
}

/// Wide (thick of order 0) test: with the universal vertices removed, the
/// rest is nonempty and its complement is disconnected. Each complement
/// component then has at least two vertices, so the rest is a join of two
/// non-cliques.
pub fn is_thick_order0(g: &Graph) -> bool {
    let universal = g.universal_vertices();
    let rest = g.vertices().difference(&universal);
    if rest.is_empty() {
        return false;
    }
    if universal.is_empty() {
        return g.complement_components().len() > 1;
    }
    let sub = g.induced(&rest).expect("subset of the vertex range");
    sub.graph.complement_components().len() > 1
}

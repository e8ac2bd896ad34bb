//! Incremental fixed point of the union and coning operations.
//!
//! Every member is grown to a local fixed point before the next seed is
//! considered. Under that discipline every non-adjacent pair inside a
//! member has already been checked against every other member, so a newly
//! added vertex `x` can only create new shared pairs or cone points that
//! involve `x`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};

/// One step of the fixed-point derivation. Member ids number members in
/// creation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoolEvent {
    /// A non-adjacent pair `diagonal` with non-clique common neighbourhood
    /// seeds the member `diagonal ∪ common`.
    Seed {
        member: usize,
        diagonal: (usize, usize),
        vertices: VertexSet,
    },
    /// `vertex` is adjacent to the non-adjacent pair `witness` of `member`.
    Cone {
        member: usize,
        vertex: usize,
        witness: (usize, usize),
    },
    /// `absorbed` and `into` share the non-adjacent pair `shared`.
    Union {
        into: usize,
        absorbed: usize,
        shared: (usize, usize),
    },
}

/// Order in which seed pairs are fed to the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedOrder {
    /// Ascending `(u, w)`.
    #[default]
    Natural,
    /// A seeded random permutation of the seed pairs.
    Shuffled(u64),
}

pub(crate) struct Closure<'g> {
    g: &'g Graph,
    masks: Vec<VertexSet>,
    verts: Vec<Vec<u32>>,
    alive: Vec<bool>,
    index: Vec<Vec<u32>>,
    fresh: Vec<u32>,
    trace: Option<Vec<PoolEvent>>,
}

impl<'g> Closure<'g> {
    pub(crate) fn run(g: &'g Graph, order: SeedOrder, trace: bool) -> (Vec<VertexSet>, Option<Vec<PoolEvent>>) {
        let mut c = Closure {
            g,
            masks: Vec::new(),
            verts: Vec::new(),
            alive: Vec::new(),
            index: vec![Vec::new(); g.n()],
            fresh: Vec::new(),
            trace: trace.then(Vec::new),
        };
        match order {
            SeedOrder::Natural => {
                let _ = g.for_each_common_neighborhood(|u, w, common| {
                    c.offer_seed(u, w, common);
                    std::ops::ControlFlow::Continue(())
                });
            }
            SeedOrder::Shuffled(seed) => {
                let mut pairs: Vec<(usize, usize, Vec<u32>)> = Vec::new();
                let _ = g.for_each_common_neighborhood(|u, w, common| {
                    pairs.push((u, w, common.to_vec()));
                    std::ops::ControlFlow::Continue(())
                });
                pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                for (u, w, common) in &pairs {
                    c.offer_seed(*u, *w, common);
                }
            }
        }
        let mut members: Vec<VertexSet> = c
            .alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| std::mem::take(&mut c.masks[i]))
            .collect();
        members.sort();
        (members, c.trace)
    }

    fn offer_seed(&mut self, u: usize, w: usize, common: &[u32]) {
        if common.len() < 2 || self.contains_pair(u, w) {
            return;
        }
        if self.g.nonadjacent_pair_in(common).is_none() {
            return;
        }
        let id = self.masks.len();
        self.masks.push(VertexSet::new(self.g.n()));
        self.verts.push(Vec::new());
        self.alive.push(true);
        self.add_vertex(id, u);
        self.add_vertex(id, w);
        for &c in common {
            self.add_vertex(id, c as usize);
        }
        if let Some(t) = self.trace.as_mut() {
            t.push(PoolEvent::Seed {
                member: id,
                diagonal: (u, w),
                vertices: self.masks[id].clone(),
            });
        }
        self.settle(id);
    }

    /// True if a live member already holds both `u` and `w`. Such a member
    /// is at its fixed point, so it has already coned off every common
    /// neighbour of the pair.
    fn contains_pair(&mut self, u: usize, w: usize) -> bool {
        let alive = &self.alive;
        self.index[u].retain(|&j| alive[j as usize]);
        self.index[u]
            .iter()
            .any(|&j| self.masks[j as usize].contains(w))
    }

    fn add_vertex(&mut self, id: usize, x: usize) {
        if self.masks[id].insert(x) {
            self.verts[id].push(x as u32);
            self.index[x].push(id as u32);
            self.fresh.push(x as u32);
        }
    }

    fn settle(&mut self, mut cur: usize) {
        'fresh: while let Some(x) = self.fresh.pop() {
            let x = x as usize;
            let alive = &self.alive;
            self.index[x].retain(|&j| alive[j as usize]);
            let others: Vec<usize> = self.index[x]
                .iter()
                .map(|&j| j as usize)
                .filter(|&j| j != cur)
                .collect();
            for j in others {
                if !self.alive[j] {
                    continue;
                }
                let Some(y) = self.shared_nonneighbor(cur, j, x) else {
                    continue;
                };
                if self.verts[j].len() > self.verts[cur].len() {
                    // Fold the current member into the larger one. Only the
                    // vertices new to `j` need processing from here on.
                    self.record_union(j, cur, (x, y));
                    self.fresh.clear();
                    self.alive[cur] = false;
                    let moved = std::mem::take(&mut self.verts[cur]);
                    for v in moved {
                        self.add_vertex(j, v as usize);
                    }
                    self.masks[cur] = VertexSet::default();
                    cur = j;
                    continue 'fresh;
                }
                self.record_union(cur, j, (x, y));
                self.alive[j] = false;
                let moved = std::mem::take(&mut self.verts[j]);
                for v in moved {
                    self.add_vertex(cur, v as usize);
                }
                self.masks[j] = VertexSet::default();
            }
            for i in 0..self.g.neighbor_list(x).len() {
                let v = self.g.neighbor_list(x)[i] as usize;
                if self.masks[cur].contains(v) {
                    continue;
                }
                if let Some(witness) = self.cone_witness(cur, v) {
                    if let Some(t) = self.trace.as_mut() {
                        t.push(PoolEvent::Cone {
                            member: cur,
                            vertex: v,
                            witness,
                        });
                    }
                    self.add_vertex(cur, v);
                }
            }
        }
    }

    /// A vertex `y != x` lying in both members and not adjacent to `x`.
    fn shared_nonneighbor(&self, a: usize, b: usize, x: usize) -> Option<usize> {
        let (small, other) = if self.verts[a].len() <= self.verts[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.verts[small]
            .iter()
            .map(|&y| y as usize)
            .find(|&y| y != x && self.masks[other].contains(y) && !self.g.adjacent(x, y))
    }

    fn cone_witness(&self, id: usize, v: usize) -> Option<(usize, usize)> {
        let link: Vec<u32> = self
            .g
            .neighbor_list(v)
            .iter()
            .copied()
            .filter(|&y| self.masks[id].contains(y as usize))
            .collect();
        if link.len() < 2 {
            return None;
        }
        self.g.nonadjacent_pair_in(&link)
    }

    fn record_union(&mut self, into: usize, absorbed: usize, shared: (usize, usize)) {
        if let Some(t) = self.trace.as_mut() {
            t.push(PoolEvent::Union {
                into,
                absorbed,
                shared: (shared.0.min(shared.1), shared.0.max(shared.1)),
            });
        }
    }
}

//! Thickness and relative hyperbolicity for arbitrary Coxeter systems.
//!
//! The thick class is seeded by irreducible affine subsets of size at
//! least 3 and by products of two commuting irreducible non-spherical
//! subsets, then closed under coning (add `s` when `s^⊥ ∩ T` is
//! non-spherical) and union (merge when the intersection is
//! non-spherical). Every subset is a bitmask, so systems are limited to
//! [`ENUMERATION_GUARD`] generators.

mod witness;

pub use witness::ThickWitness;

use std::cell::RefCell;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coxeter::{AffineType, CoxeterError, CoxeterMatrix, IrreducibleType, MaskView};
use crate::graph::VertexSet;
use crate::racg::SeedOrder;
use crate::Status;

pub const ENUMERATION_GUARD: usize = 24;

/// Violations kept per condition; flags stay exact regardless.
const VIOLATION_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneralError {
    #[error(
        "{n} generators exceeds the limit of {limit} for subset enumeration; \
         right-angled inputs can use the graph classifier instead"
    )]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("peripheral {0} is the whole generating set")]
    ImproperPeripheral(VertexSet),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Which product seeds to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedMode {
    /// Products of inclusion-minimal irreducible non-spherical factors.
    #[default]
    Minimal,
    /// Products of all commuting irreducible non-spherical pairs.
    Full,
}

/// Maximal thick subsets with their derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralStructure {
    pub j_list: Vec<VertexSet>,
    pub witnesses: Vec<ThickWitness>,
    /// The whole generating set is thick.
    pub spans_all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhCondition {
    Rh1,
    Rh2,
    Rh3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhViolation {
    pub condition: RhCondition,
    pub subsets: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhReport {
    pub rh1_ok: bool,
    pub rh2_ok: bool,
    pub rh3_ok: bool,
    pub violations: Vec<RhViolation>,
}

impl RhReport {
    pub fn passed(&self) -> bool {
        self.rh1_ok && self.rh2_ok && self.rh3_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterReport {
    pub status: Status,
    pub peripherals: PeripheralStructure,
    /// Present for relatively hyperbolic systems.
    pub rh: Option<RhReport>,
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Affine(u64),
    Product(u64, u64),
    Cone(usize, usize),
    Union(usize, usize),
}

struct Analysis<'a> {
    view: MaskView<'a>,
    n: usize,
    /// Diagram-connected non-spherical subsets.
    nonspherical: Vec<u64>,
    /// Irreducible affine subsets of size at least 3.
    affine3: Vec<u64>,
    spherical: RefCell<HashMap<u64, bool>>,
}

impl<'a> Analysis<'a> {
    fn new(m: &'a CoxeterMatrix) -> Result<Self, GeneralError> {
        let n = m.n();
        if n > ENUMERATION_GUARD {
            return Err(GeneralError::TooLarge {
                n,
                limit: ENUMERATION_GUARD,
            });
        }
        let view = MaskView::new(m);
        let mut nonspherical = Vec::new();
        let mut affine3 = Vec::new();
        for root in 0..n {
            let allowed = view.full() & !((2u64 << root) - 1);
            let cand = view.diagram(root) & allowed;
            grow(&view, 1 << root, cand, 0, allowed, &mut |k| match view.classify(k) {
                IrreducibleType::Finite(_) => {}
                t => {
                    if t.is_affine() && k.count_ones() >= 3 {
                        affine3.push(k);
                    }
                    nonspherical.push(k);
                }
            });
        }
        nonspherical.sort_unstable();
        affine3.sort_unstable();
        Ok(Analysis {
            view,
            n,
            nonspherical,
            affine3,
            spherical: RefCell::new(HashMap::new()),
        })
    }

    fn is_spherical(&self, j: u64) -> bool {
        if j.count_ones() <= 1 {
            return true;
        }
        if let Some(&b) = self.spherical.borrow().get(&j) {
            return b;
        }
        let b = self.view.is_spherical(j);
        self.spherical.borrow_mut().insert(j, b);
        b
    }

    fn set(&self, mask: u64) -> VertexSet {
        VertexSet::from_mask(self.n, mask)
    }

    fn minimal_nonspherical(&self) -> Vec<u64> {
        self.nonspherical
            .iter()
            .copied()
            .filter(|&k| {
                let mut rest = k;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if !self.is_spherical(k & !bit) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }

    fn seeds(&self, mode: SeedMode) -> Vec<Node> {
        let mut out: Vec<Node> = self.affine3.iter().map(|&k| Node::Affine(k)).collect();
        let factors = match mode {
            SeedMode::Minimal => self.minimal_nonspherical(),
            SeedMode::Full => self.nonspherical.clone(),
        };
        for (i, &a) in factors.iter().enumerate() {
            let perp = self.view.perp(a);
            for &b in &factors[i + 1..] {
                if b & !perp == 0 {
                    out.push(Node::Product(a, b));
                }
            }
        }
        out
    }

    /// Seed-and-saturate inside `allowed`. Returns `(mask, node)` for the
    /// maximal members and the node arena.
    fn saturate(&self, mode: SeedMode, order: SeedOrder, allowed: u64) -> (Vec<(u64, usize)>, Vec<Node>) {
        let mut arena: Vec<Node> = self
            .seeds(mode)
            .into_iter()
            .filter(|node| match *node {
                Node::Affine(k) => k & !allowed == 0,
                Node::Product(a, b) => (a | b) & !allowed == 0,
                _ => unreachable!(),
            })
            .collect();
        let mut queue: Vec<usize> = (0..arena.len()).rev().collect();
        if let SeedOrder::Shuffled(seed) = order {
            queue.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let mut members: Vec<(u64, usize)> = Vec::new();
        while let Some(seed) = queue.pop() {
            let mut t = node_mask(&arena, seed);
            if members.iter().any(|&(m, _)| t & !m == 0) {
                continue;
            }
            let mut node = seed;
            loop {
                // Cone until stable.
                let mut grew = true;
                while grew {
                    grew = false;
                    let mut outside = allowed & !t;
                    while outside != 0 {
                        let s = outside.trailing_zeros() as usize;
                        outside &= outside - 1;
                        if !self.is_spherical(self.view.perp(1 << s) & t) {
                            arena.push(Node::Cone(node, s));
                            node = arena.len() - 1;
                            t |= 1 << s;
                            grew = true;
                        }
                    }
                }
                let Some(pos) = members.iter().position(|&(m, _)| !self.is_spherical(m & t)) else {
                    break;
                };
                let (m, other) = members.swap_remove(pos);
                arena.push(Node::Union(node, other));
                node = arena.len() - 1;
                t |= m;
            }
            members.retain(|&(m, _)| m & !t != 0);
            members.push((t, node));
        }
        members.sort_by_key(|&(m, _)| self.set(m));
        (members, arena)
    }

    fn witness(&self, arena: &[Node], i: usize) -> ThickWitness {
        match arena[i] {
            Node::Affine(k) => ThickWitness::Affine(self.set(k)),
            Node::Product(a, b) => ThickWitness::Product(self.set(a), self.set(b)),
            Node::Cone(base, s) => ThickWitness::Cone {
                base: Box::new(self.witness(arena, base)),
                generator: s,
            },
            Node::Union(a, b) => ThickWitness::Union(Box::new(self.witness(arena, a)), Box::new(self.witness(arena, b))),
        }
    }

    fn structure(&self, mode: SeedMode, order: SeedOrder) -> PeripheralStructure {
        let (members, arena) = self.saturate(mode, order, self.view.full());
        let spans_all = members.iter().any(|&(m, _)| m == self.view.full()) && self.n > 0;
        PeripheralStructure {
            j_list: members.iter().map(|&(m, _)| self.set(m)).collect(),
            witnesses: members.iter().map(|&(_, i)| self.witness(&arena, i)).collect(),
            spans_all,
        }
    }

    fn verify_rh(&self, js: &[u64]) -> RhReport {
        let covered = |k: u64| js.iter().any(|&j| k & !j == 0);
        let mut v1 = Vec::new();
        for &k in &self.affine3 {
            if !covered(k) {
                v1.push(vec![k]);
            }
        }
        let mut rh1_ok = v1.is_empty();
        'pairs: for &k1 in &self.nonspherical {
            for c in self.view.components(self.view.perp(k1)) {
                if !self.is_spherical(c) && !covered(k1 | c) {
                    rh1_ok = false;
                    if v1.len() >= VIOLATION_CAP {
                        break 'pairs;
                    }
                    if k1 < c {
                        v1.push(vec![k1, c]);
                    }
                }
            }
        }

        let mut v2 = Vec::new();
        for (i, &a) in js.iter().enumerate() {
            for &b in &js[i + 1..] {
                if !self.is_spherical(a & b) {
                    v2.push(vec![a, b]);
                }
            }
        }

        let mut v3 = Vec::new();
        for &j in js {
            for &k in &self.nonspherical {
                let p = self.view.perp(k);
                if k & !j == 0 && p & !j != 0 {
                    v3.push(vec![j, k, p]);
                }
            }
        }

        let rh2_ok = v2.is_empty();
        let rh3_ok = v3.is_empty();
        let mut violations = Vec::new();
        for (condition, list) in [(RhCondition::Rh1, v1), (RhCondition::Rh2, v2), (RhCondition::Rh3, v3)] {
            violations.extend(list.into_iter().take(VIOLATION_CAP).map(|subsets| RhViolation {
                condition,
                subsets: subsets.into_iter().map(|m| self.set(m)).collect(),
            }));
        }
        RhReport {
            rh1_ok,
            rh2_ok,
            rh3_ok,
            violations,
        }
    }
}

fn node_mask(arena: &[Node], i: usize) -> u64 {
    match arena[i] {
        Node::Affine(k) => k,
        Node::Product(a, b) => a | b,
        Node::Cone(base, s) => node_mask(arena, base) | 1 << s,
        Node::Union(a, b) => node_mask(arena, a) | node_mask(arena, b),
    }
}

/// Visits every diagram-connected set containing `cur`, extended only by
/// vertices of `allowed` outside `forbidden`, exactly once.
fn grow(view: &MaskView<'_>, cur: u64, cand: u64, mut forbidden: u64, allowed: u64, visit: &mut impl FnMut(u64)) {
    visit(cur);
    let mut rest = cand;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        forbidden |= bit;
        let s = bit.trailing_zeros() as usize;
        let next = (rest | view.diagram(s)) & allowed & !cur & !bit & !forbidden;
        grow(view, cur | bit, next, forbidden, allowed, visit);
    }
}

/// Seed subsets: affine subsets of size at least 3 and products of
/// commuting minimal irreducible non-spherical subsets.
pub fn enumerate_seeds(m: &CoxeterMatrix) -> Result<Vec<VertexSet>, GeneralError> {
    enumerate_seeds_with(m, SeedMode::Minimal)
}

pub fn enumerate_seeds_with(m: &CoxeterMatrix, mode: SeedMode) -> Result<Vec<VertexSet>, GeneralError> {
    let an = Analysis::new(m)?;
    let mut out: Vec<VertexSet> = an
        .seeds(mode)
        .iter()
        .map(|node| match *node {
            Node::Affine(k) => an.set(k),
            Node::Product(a, b) => an.set(a | b),
            _ => unreachable!(),
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn saturate_thick(m: &CoxeterMatrix) -> Result<PeripheralStructure, GeneralError> {
    saturate_thick_with(m, SeedMode::Minimal, SeedOrder::Natural)
}

pub fn saturate_thick_with(
    m: &CoxeterMatrix,
    mode: SeedMode,
    order: SeedOrder,
) -> Result<PeripheralStructure, GeneralError> {
    Ok(Analysis::new(m)?.structure(mode, order))
}

/// Checks the three relative hyperbolicity conditions for a candidate
/// peripheral collection of proper subsets.
pub fn verify_rh(m: &CoxeterMatrix, j_list: &[VertexSet]) -> Result<RhReport, GeneralError> {
    let an = Analysis::new(m)?;
    let mut js = Vec::with_capacity(j_list.len());
    for j in j_list {
        m.subset_predicates(j)?;
        if j.len() == m.n() {
            return Err(GeneralError::ImproperPeripheral(j.clone()));
        }
        js.push(j.low_mask());
    }
    Ok(an.verify_rh(&js))
}

/// Maximal thick subsets missing at least one generator.
pub fn maximal_proper_thick(m: &CoxeterMatrix) -> Result<Vec<VertexSet>, GeneralError> {
    let an = Analysis::new(m)?;
    let full = an.view.full();
    let mut all: Vec<u64> = (0..an.n)
        .flat_map(|s| {
            an.saturate(SeedMode::Minimal, SeedOrder::Natural, full & !(1 << s))
                .0
                .into_iter()
                .map(|(mask, _)| mask)
        })
        .collect();
    all.sort_unstable();
    all.dedup();
    let maximal: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&a| !all.iter().any(|&b| b != a && a & !b == 0))
        .collect();
    let mut out: Vec<VertexSet> = maximal.into_iter().map(|mask| an.set(mask)).collect();
    out.sort();
    Ok(out)
}

/// Precedence: spherical (finite), a single infinite bond over a finite
/// rest (virtually cyclic), thick, empty pool (hyperbolic), otherwise
/// relatively hyperbolic with the maximal thick subsets as peripherals.
/// The relatively hyperbolic case is always certified by [`verify_rh`].
pub fn classify_coxeter(m: &CoxeterMatrix) -> Result<CoxeterReport, GeneralError> {
    let an = Analysis::new(m)?;
    let full = an.view.full();
    let nonspherical: Vec<u64> = an
        .view
        .components(full)
        .into_iter()
        .filter(|&c| !an.is_spherical(c))
        .collect();
    let empty = PeripheralStructure {
        j_list: Vec::new(),
        witnesses: Vec::new(),
        spans_all: false,
    };
    let report = |status, peripherals, rh| Ok(CoxeterReport { status, peripherals, rh });
    if nonspherical.is_empty() {
        return report(Status::Finite, empty, None);
    }
    if let [c] = nonspherical[..] {
        if an.view.classify(c) == IrreducibleType::Affine(AffineType::A1) {
            return report(Status::VirtuallyCyclic, empty, None);
        }
    }
    let structure = an.structure(SeedMode::Minimal, SeedOrder::Natural);
    for (j, w) in structure.j_list.iter().zip(&structure.witnesses) {
        match w.verify(m) {
            Ok(s) if &s == j => {}
            Ok(s) => return Err(GeneralError::Inconsistent(format!("witness derives {s}, expected {j}"))),
            Err(e) => return Err(GeneralError::Inconsistent(format!("witness for {j}: {e}"))),
        }
    }
    if structure.spans_all {
        return report(Status::Thick, structure, None);
    }
    if structure.j_list.is_empty() {
        return report(Status::Hyperbolic, structure, None);
    }
    let js: Vec<u64> = structure.j_list.iter().map(VertexSet::low_mask).collect();
    let rh = an.verify_rh(&js);
    if !rh.passed() {
        return Err(GeneralError::Inconsistent(format!(
            "peripheral collection fails relative hyperbolicity: {:?}",
            rh.violations.first()
        )));
    }
    report(Status::RelativelyHyperbolic, structure, Some(rh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Label;
    use crate::graph::Graph;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn triangle333() -> CoxeterMatrix {
        CoxeterMatrix::from_fn(3, |_, _| Label::Finite(3)).unwrap()
    }

    /// 4-cycle s, u, v, t with m_st = m, m_su = m_uv = m_tv = 2 and
    /// m_sv = m_tu = infinity (generators s=0, t=1, u=2, v=3).
    fn fuchsian(m: u32) -> CoxeterMatrix {
        CoxeterMatrix::from_fn(4, |a, b| match (a, b) {
            (0, 1) => Label::Finite(m),
            (0, 3) | (1, 2) => Label::Infinite,
            _ => Label::Finite(2),
        })
        .unwrap()
    }

    fn square_with_pendant() -> CoxeterMatrix {
        CoxeterMatrix::from_racg(&Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]).unwrap())
    }

    #[test]
    fn seeds() {
        let sq = CoxeterMatrix::from_racg(&Graph::cycle(4));
        assert_eq!(enumerate_seeds(&sq).unwrap(), vec![set(&[0, 1, 2, 3])]);
        assert_eq!(enumerate_seeds(&triangle333()).unwrap(), vec![set(&[0, 1, 2])]);
        for m in 3..8 {
            assert!(enumerate_seeds(&fuchsian(m)).unwrap().is_empty());
        }
    }

    #[test]
    fn saturation() {
        let p = saturate_thick(&square_with_pendant()).unwrap();
        assert_eq!(p.j_list, vec![set(&[0, 1, 2, 3])]);

        let cone = CoxeterMatrix::from_fn(4, |_, t| if t == 3 { Label::Finite(2) } else { Label::Finite(3) }).unwrap();
        let p = saturate_thick(&cone).unwrap();
        assert_eq!(p.j_list, vec![set(&[0, 1, 2, 3])]);
        assert!(p.spans_all);
        assert!(matches!(p.witnesses[0], ThickWitness::Cone { generator: 3, .. }));

        assert!(saturate_thick(&fuchsian(3)).unwrap().j_list.is_empty());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_coxeter(&fuchsian(3)).unwrap().status, Status::Hyperbolic);
        assert_eq!(
            classify_coxeter(&CoxeterMatrix::from_racg(&Graph::cycle(4))).unwrap().status,
            Status::Thick
        );
        let t = classify_coxeter(&triangle333()).unwrap();
        assert_eq!(t.status, Status::Thick);
        assert_eq!(t.peripherals.j_list, vec![set(&[0, 1, 2])]);

        let r = classify_coxeter(&square_with_pendant()).unwrap();
        assert_eq!(r.status, Status::RelativelyHyperbolic);
        assert_eq!(r.peripherals.j_list, vec![set(&[0, 1, 2, 3])]);
        assert!(r.rh.unwrap().passed());

        let h3 = CoxeterMatrix::from_fn(3, |s, t| match (s, t) {
            (0, 1) => Label::Finite(5),
            (1, 2) => Label::Finite(3),
            _ => Label::Finite(2),
        })
        .unwrap();
        assert_eq!(classify_coxeter(&h3).unwrap().status, Status::Finite);
        let bond = CoxeterMatrix::from_fn(3, |s, t| if (s, t) == (0, 1) { Label::Infinite } else { Label::Finite(2) }).unwrap();
        assert_eq!(classify_coxeter(&bond).unwrap().status, Status::VirtuallyCyclic);
    }

    #[test]
    fn rh_verification() {
        let m = square_with_pendant();
        assert!(verify_rh(&m, &[set(&[0, 1, 2, 3])]).unwrap().passed());

        let bad = verify_rh(&m, &[set(&[0, 1, 2])]).unwrap();
        assert!(!bad.rh1_ok);
        assert!(bad.violations.iter().any(|v| v.condition == RhCondition::Rh1));

        let tri = verify_rh(&triangle333(), &[]).unwrap();
        assert!(!tri.rh1_ok);
        assert_eq!(tri.violations[0].subsets, vec![set(&[0, 1, 2])]);

        assert!(matches!(
            verify_rh(&m, &[m.all()]),
            Err(GeneralError::ImproperPeripheral(_))
        ));
    }

    #[test]
    fn guard() {
        let big = CoxeterMatrix::from_racg(&Graph::empty(25));
        assert!(matches!(classify_coxeter(&big), Err(GeneralError::TooLarge { n: 25, limit: 24 })));
    }

    #[test]
    fn witness_rendering() {
        let p = saturate_thick(&CoxeterMatrix::from_racg(&Graph::cycle(4).join(&Graph::complete(1)))).unwrap();
        let text = p.witnesses[0].render();
        assert!(text.starts_with("cone 4 -> [0, 1, 2, 3, 4]\n  product"), "{text}");
    }
}

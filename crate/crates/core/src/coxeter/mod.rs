//! General Coxeter systems given by their label matrix.
//!
//! The diagram has an edge between `s` and `t` whenever `m_st != 2`, so
//! irreducible subsets are the connected ones. Irreducible pieces are
//! classified exactly against the finite and affine tables.

mod io;
mod types;

pub use io::{parse_coxeter, write_coxeter};
pub use types::{AffineType, FiniteType, IrreducibleType};

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// An off-diagonal label `m_st`. The diagonal is implicitly 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn commutes(self) -> bool {
        self == Label::Finite(2)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("label m({row},{col}) = {value} is not allowed; off-diagonal labels are 2, 3, ... or infinity")]
    InvalidLabel { row: usize, col: usize, value: u32 },
    #[error("matrix is not symmetric at ({row},{col})")]
    Asymmetric { row: usize, col: usize },
    #[error("generator {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("subset {0} is not connected in the Coxeter diagram")]
    NotConnected(VertexSet),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    n: usize,
    labels: Vec<Label>,
    diagram: Vec<VertexSet>,
    commuting: Vec<VertexSet>,
}

/// The three subset predicates used by the classifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPredicates {
    pub is_spherical: bool,
    pub is_irreducible_affine: bool,
    pub irreducible_nonspherical_components: Vec<(VertexSet, IrreducibleType)>,
}

impl CoxeterMatrix {
    /// Builds the matrix from `label(s, t)` for `s < t`.
    pub fn from_fn<F>(n: usize, mut label: F) -> Result<Self, CoxeterError>
    where
        F: FnMut(usize, usize) -> Label,
    {
        let mut labels = vec![Label::Finite(1); n * n];
        for s in 0..n {
            for t in s + 1..n {
                let m = label(s, t);
                if let Label::Finite(v) = m {
                    if v < 2 {
                        return Err(CoxeterError::InvalidLabel { row: s, col: t, value: v });
                    }
                }
                labels[s * n + t] = m;
                labels[t * n + s] = m;
            }
        }
        Ok(Self::from_labels(n, labels))
    }

    fn from_labels(n: usize, labels: Vec<Label>) -> Self {
        let mut diagram = vec![VertexSet::new(n); n];
        let mut commuting = vec![VertexSet::new(n); n];
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                if labels[s * n + t].commutes() {
                    commuting[s].insert(t);
                } else {
                    diagram[s].insert(t);
                }
            }
        }
        CoxeterMatrix {
            n,
            labels,
            diagram,
            commuting,
        }
    }

    /// Right-angled system of a graph: edges get 2, non-edges infinity.
    pub fn from_racg(g: &Graph) -> Self {
        Self::from_fn(g.n(), |s, t| {
            if g.adjacent(s, t) {
                Label::Finite(2)
            } else {
                Label::Infinite
            }
        })
        .expect("labels 2 and infinity are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_st`; `Finite(1)` on the diagonal.
    pub fn label(&self, s: usize, t: usize) -> Label {
        self.labels[s * self.n + t]
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Generators joined to `s` in the diagram.
    pub fn diagram_neighbors(&self, s: usize) -> &VertexSet {
        &self.diagram[s]
    }

    /// Generators `t != s` with `m_st = 2`.
    pub fn commuting_with(&self, s: usize) -> &VertexSet {
        &self.commuting[s]
    }

    fn check(&self, j: &VertexSet) -> Result<(), CoxeterError> {
        match j.last() {
            Some(v) if v >= self.n => Err(CoxeterError::OutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    pub fn diagram_components(&self, j: &VertexSet) -> Result<Vec<VertexSet>, CoxeterError> {
        self.check(j)?;
        Ok(self.components_unchecked(j))
    }

    fn components_unchecked(&self, j: &VertexSet) -> Vec<VertexSet> {
        let mut left = j.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            left.remove(start);
            comp.insert(start);
            while let Some(s) = stack.pop() {
                for t in self.diagram[s].intersection(&left).iter() {
                    left.remove(t);
                    comp.insert(t);
                    stack.push(t);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Type of a single diagram component.
    pub fn classify_component(&self, k: &VertexSet) -> Result<IrreducibleType, CoxeterError> {
        self.check(k)?;
        if k.is_empty() || self.components_unchecked(k).len() != 1 {
            return Err(CoxeterError::NotConnected(k.clone()));
        }
        Ok(self.classify_unchecked(k))
    }

    fn classify_unchecked(&self, k: &VertexSet) -> IrreducibleType {
        let verts = k.to_vec();
        types::classify_connected(verts.len(), |i, j| self.label(verts[i], verts[j]))
    }

    pub fn subset_predicates(&self, j: &VertexSet) -> Result<SubsetPredicates, CoxeterError> {
        self.check(j)?;
        let comps = self.components_unchecked(j);
        let typed: Vec<(VertexSet, IrreducibleType)> = comps
            .into_iter()
            .map(|c| {
                let t = self.classify_unchecked(&c);
                (c, t)
            })
            .collect();
        let is_irreducible_affine = typed.len() == 1 && typed[0].1.is_affine();
        let irreducible_nonspherical_components: Vec<_> =
            typed.into_iter().filter(|(_, t)| !t.is_finite()).collect();
        Ok(SubsetPredicates {
            is_spherical: irreducible_nonspherical_components.is_empty(),
            is_irreducible_affine,
            irreducible_nonspherical_components,
        })
    }

    pub fn is_spherical(&self, j: &VertexSet) -> Result<bool, CoxeterError> {
        self.check(j)?;
        Ok(self
            .components_unchecked(j)
            .iter()
            .all(|c| self.classify_unchecked(c).is_finite()))
    }

    /// Generators outside `K` commuting with every element of `K`.
    pub fn perp(&self, k: &VertexSet) -> Result<VertexSet, CoxeterError> {
        self.check(k)?;
        let mut out = self.all().difference(k);
        for s in k.iter() {
            out.intersect_with(&self.commuting[s]);
        }
        Ok(out)
    }
}

/// Bitmask versions of the subset queries, for systems with at most 64
/// generators. Used by the exhaustive general classifier.
pub(crate) struct MaskView<'a> {
    m: &'a CoxeterMatrix,
    diagram: Vec<u64>,
    commuting: Vec<u64>,
}

impl<'a> MaskView<'a> {
    pub(crate) fn new(m: &'a CoxeterMatrix) -> Self {
        assert!(m.n <= 64, "mask view needs at most 64 generators");
        MaskView {
            m,
            diagram: m.diagram.iter().map(VertexSet::low_mask).collect(),
            commuting: m.commuting.iter().map(VertexSet::low_mask).collect(),
        }
    }

    pub(crate) fn full(&self) -> u64 {
        if self.m.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.m.n) - 1
        }
    }

    pub(crate) fn diagram(&self, s: usize) -> u64 {
        self.diagram[s]
    }

    pub(crate) fn components(&self, j: u64) -> Vec<u64> {
        let mut left = j;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let s = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.diagram[s] & left & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    /// Type of a diagram-connected mask.
    pub(crate) fn classify(&self, k: u64) -> IrreducibleType {
        let verts = bits(k);
        types::classify_connected(verts.len(), |i, j| self.m.label(verts[i], verts[j]))
    }

    pub(crate) fn is_spherical(&self, j: u64) -> bool {
        self.components(j).into_iter().all(|c| self.classify(c).is_finite())
    }

    pub(crate) fn perp(&self, k: u64) -> u64 {
        let mut out = self.full() & !k;
        let mut rest = k;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out &= self.commuting[s];
        }
        out
    }
}

pub(crate) fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn path(labels: &[u32]) -> CoxeterMatrix {
        CoxeterMatrix::from_fn(labels.len() + 1, |s, t| {
            if t == s + 1 {
                Label::Finite(labels[s])
            } else {
                Label::Finite(2)
            }
        })
        .unwrap()
    }

    fn triangle333() -> CoxeterMatrix {
        CoxeterMatrix::from_fn(3, |_, _| Label::Finite(3)).unwrap()
    }

    #[test]
    fn components_and_perp() {
        let sq = CoxeterMatrix::from_racg(&Graph::cycle(4));
        assert_eq!(sq.diagram_components(&sq.all()).unwrap(), vec![set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(sq.perp(&set(&[0, 2])).unwrap(), set(&[1, 3]));

        let flat = CoxeterMatrix::from_fn(4, |_, _| Label::Finite(2)).unwrap();
        assert_eq!(flat.diagram_components(&flat.all()).unwrap().len(), 4);
        assert_eq!(flat.perp(&set(&[0])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(path(&[3, 3]).diagram_components(&set(&[0, 1, 2])).unwrap().len(), 1);
    }

    #[test]
    fn classification_examples() {
        let t = triangle333();
        assert_eq!(t.classify_component(&t.all()).unwrap(), IrreducibleType::Affine(AffineType::A(2)));
        let p = path(&[3, 3]);
        assert_eq!(p.classify_component(&p.all()).unwrap(), IrreducibleType::Finite(FiniteType::A(3)));
        let five = path(&[5]);
        assert_eq!(five.classify_component(&five.all()).unwrap(), IrreducibleType::Finite(FiniteType::I2(5)));
        let inf = CoxeterMatrix::from_racg(&Graph::empty(2));
        assert_eq!(inf.classify_component(&inf.all()).unwrap(), IrreducibleType::Affine(AffineType::A1));
        assert!(matches!(
            CoxeterMatrix::from_racg(&Graph::cycle(4)).classify_component(&set(&[0, 1, 2, 3])),
            Err(CoxeterError::NotConnected(_))
        ));
    }

    #[test]
    fn named_paths() {
        use AffineType as Af;
        use FiniteType as Fi;
        use IrreducibleType::{Affine, Finite, Indefinite};
        let cases: &[(&[u32], IrreducibleType)] = &[
            (&[4, 3, 3], Finite(Fi::B(4))),
            (&[3, 3, 4], Finite(Fi::B(4))),
            (&[4, 3, 4], Affine(Af::C(3))),
            (&[4, 4], Affine(Af::C(2))),
            (&[3, 4, 3], Finite(Fi::F4)),
            (&[3, 4, 3, 3], Affine(Af::F4)),
            (&[5, 3], Finite(Fi::H3)),
            (&[3, 3, 5], Finite(Fi::H4)),
            (&[3, 6], Affine(Af::G2)),
            (&[5, 4], Indefinite),
            (&[3, 5, 3], Indefinite),
            (&[6, 4], Indefinite),
        ];
        for (labels, want) in cases {
            let m = path(labels);
            assert_eq!(m.classify_component(&m.all()).unwrap(), *want, "{labels:?}");
        }
    }

    #[test]
    fn predicates() {
        let sq = CoxeterMatrix::from_racg(&Graph::cycle(4));
        let p = sq.subset_predicates(&sq.all()).unwrap();
        assert!(!p.is_spherical && !p.is_irreducible_affine);
        assert_eq!(p.irreducible_nonspherical_components.len(), 2);
        assert!(p.irreducible_nonspherical_components.iter().all(|(_, t)| *t == IrreducibleType::Affine(AffineType::A1)));
        assert!(sq.subset_predicates(&VertexSet::new(4)).unwrap().is_spherical);
        let pair = sq.subset_predicates(&set(&[0, 2])).unwrap();
        assert!(!pair.is_spherical && pair.is_irreducible_affine);
    }

    #[test]
    fn invalid_labels_are_rejected() {
        assert!(matches!(
            CoxeterMatrix::from_fn(3, |_, _| Label::Finite(1)),
            Err(CoxeterError::InvalidLabel { row: 0, col: 1, value: 1 })
        ));
        let m = triangle333();
        assert!(matches!(m.perp(&set(&[5])), Err(CoxeterError::OutOfRange { vertex: 5, n: 3 })));
    }

    #[test]
    fn mask_view_matches_sets() {
        let m = CoxeterMatrix::from_racg(&Graph::cycle(5).disjoint_union(&Graph::complete(2)));
        let v = MaskView::new(&m);
        for j in 0u64..(1 << 7) {
            let s = VertexSet::from_mask(7, j);
            let comps: Vec<u64> = m.diagram_components(&s).unwrap().iter().map(VertexSet::low_mask).collect();
            assert_eq!(v.components(j), comps);
            assert_eq!(v.is_spherical(j), m.is_spherical(&s).unwrap());
            assert_eq!(v.perp(j), m.perp(&s).unwrap().low_mask());
        }
    }
}

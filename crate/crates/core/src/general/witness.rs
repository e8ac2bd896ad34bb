use std::fmt::Write as _;

use crate::coxeter::CoxeterMatrix;
use crate::graph::VertexSet;

/// Derivation of a thick subset from seeds by coning and union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThickWitness {
    /// Irreducible affine subset of size at least 3.
    Affine(VertexSet),
    /// Two commuting irreducible non-spherical subsets.
    Product(VertexSet, VertexSet),
    /// `base` plus a generator whose perp inside `base` is non-spherical.
    Cone { base: Box<ThickWitness>, generator: usize },
    /// Two subsets with non-spherical intersection.
    Union(Box<ThickWitness>, Box<ThickWitness>),
}

impl ThickWitness {
    /// The subset this witness derives.
    pub fn set(&self) -> VertexSet {
        match self {
            ThickWitness::Affine(k) => k.clone(),
            ThickWitness::Product(a, b) => a.union(b),
            ThickWitness::Cone { base, generator } => {
                let mut s = base.set();
                s.insert(*generator);
                s
            }
            ThickWitness::Union(a, b) => a.set().union(&b.set()),
        }
    }

    /// Re-checks every node against `m`; returns the derived set.
    pub fn verify(&self, m: &CoxeterMatrix) -> Result<VertexSet, String> {
        let spherical = |s: &VertexSet| m.is_spherical(s).map_err(|e| e.to_string());
        let irreducible_nonspherical = |s: &VertexSet| -> Result<bool, String> {
            Ok(!s.is_empty() && m.diagram_components(s).map_err(|e| e.to_string())?.len() == 1 && !spherical(s)?)
        };
        match self {
            ThickWitness::Affine(k) => {
                let p = m.subset_predicates(k).map_err(|e| e.to_string())?;
                if k.len() >= 3 && p.is_irreducible_affine {
                    Ok(k.clone())
                } else {
                    Err(format!("{k} is not irreducible affine of size at least 3"))
                }
            }
            ThickWitness::Product(a, b) => {
                if !irreducible_nonspherical(a)? || !irreducible_nonspherical(b)? {
                    return Err(format!("{a} x {b}: a factor is not irreducible non-spherical"));
                }
                if !b.is_subset(&m.perp(a).map_err(|e| e.to_string())?) {
                    return Err(format!("{a} x {b}: factors do not commute"));
                }
                Ok(a.union(b))
            }
            ThickWitness::Cone { base, generator } => {
                let t = base.verify(m)?;
                if t.contains(*generator) {
                    return Err(format!("cone on {t}: {generator} already present"));
                }
                let single = VertexSet::from_vertices(m.n(), [*generator]);
                let meet = m.perp(&single).map_err(|e| e.to_string())?.intersection(&t);
                if spherical(&meet)? {
                    return Err(format!("cone on {t} by {generator}: perp {meet} is spherical"));
                }
                Ok(t.union(&single))
            }
            ThickWitness::Union(a, b) => {
                let (sa, sb) = (a.verify(m)?, b.verify(m)?);
                let meet = sa.intersection(&sb);
                if spherical(&meet)? {
                    return Err(format!("union of {sa} and {sb}: intersection {meet} is spherical"));
                }
                Ok(sa.union(&sb))
            }
        }
    }

    /// One node per line, children indented by two spaces.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        match self {
            ThickWitness::Affine(k) => {
                let _ = writeln!(out, "{pad}affine {k}");
            }
            ThickWitness::Product(a, b) => {
                let _ = writeln!(out, "{pad}product {a} x {b}");
            }
            ThickWitness::Cone { base, generator } => {
                let _ = writeln!(out, "{pad}cone {generator} -> {}", self.set());
                base.render_into(out, depth + 1);
            }
            ThickWitness::Union(a, b) => {
                let _ = writeln!(out, "{pad}union -> {}", self.set());
                a.render_into(out, depth + 1);
                b.render_into(out, depth + 1);
            }
        }
    }
}

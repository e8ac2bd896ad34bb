//! Exact classification of connected Coxeter diagrams against the
//! spherical and affine tables.

use std::fmt;

use super::Label;

/// Spherical (finite) irreducible types. Rank-two diagrams are `A(2)` for
/// `m = 3`, `B(2)` for `m = 4` and `I2(m)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

/// Irreducible affine types, indexed by rank minus one as usual, so
/// `A(k)` is the `(k+1)`-cycle with all labels 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffineType {
    /// Two generators with `m = ∞`.
    A1,
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    Finite(FiniteType),
    Affine(AffineType),
    Indefinite,
}

impl IrreducibleType {
    pub fn is_finite(self) -> bool {
        matches!(self, IrreducibleType::Finite(_))
    }

    pub fn is_affine(self) -> bool {
        matches!(self, IrreducibleType::Affine(_))
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(k) => write!(f, "A{k}"),
            FiniteType::B(k) => write!(f, "B{k}"),
            FiniteType::D(k) => write!(f, "D{k}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A1 => write!(f, "~A1"),
            AffineType::A(k) => write!(f, "~A{k}"),
            AffineType::B(k) => write!(f, "~B{k}"),
            AffineType::C(k) => write!(f, "~C{k}"),
            AffineType::D(k) => write!(f, "~D{k}"),
            AffineType::E6 => write!(f, "~E6"),
            AffineType::E7 => write!(f, "~E7"),
            AffineType::E8 => write!(f, "~E8"),
            AffineType::F4 => write!(f, "~F4"),
            AffineType::G2 => write!(f, "~G2"),
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::Finite(t) => write!(f, "finite {t}"),
            IrreducibleType::Affine(t) => write!(f, "affine {t}"),
            IrreducibleType::Indefinite => write!(f, "indefinite"),
        }
    }
}

/// Classifies a connected diagram on `k` nodes. `label(i, j)` gives the
/// label between local nodes `i` and `j`; connectivity is the caller's
/// responsibility.
pub(crate) fn classify_connected<F>(k: usize, label: F) -> IrreducibleType
where
    F: Fn(usize, usize) -> Label,
{
    use IrreducibleType::{Affine, Finite, Indefinite};

    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut edges = 0;
    for i in 0..k {
        for j in i + 1..k {
            match label(i, j) {
                Label::Finite(2) => {}
                Label::Infinite if k > 2 => return Indefinite,
                _ => {
                    nbrs[i].push(j);
                    nbrs[j].push(i);
                    edges += 1;
                }
            }
        }
    }
    let order = |i: usize, j: usize| match label(i, j) {
        Label::Finite(m) => m,
        Label::Infinite => 0,
    };

    match k {
        0 => return Indefinite,
        1 => return Finite(FiniteType::A(1)),
        2 => {
            return match label(0, 1) {
                Label::Infinite => Affine(AffineType::A1),
                Label::Finite(3) => Finite(FiniteType::A(2)),
                Label::Finite(4) => Finite(FiniteType::B(2)),
                Label::Finite(m) => Finite(FiniteType::I2(m)),
            }
        }
        _ => {}
    }

    if edges == k {
        let is_cycle = nbrs.iter().all(|n| n.len() == 2);
        let all_three = (0..k).all(|i| nbrs[i].iter().all(|&j| order(i, j) == 3));
        return if is_cycle && all_three {
            Affine(AffineType::A(k - 1))
        } else {
            Indefinite
        };
    }
    if edges != k - 1 {
        return Indefinite;
    }

    // Trees from here on.
    let max_degree = nbrs.iter().map(Vec::len).max().unwrap_or(0);
    let all_three = (0..k).all(|i| nbrs[i].iter().all(|&j| order(i, j) == 3));
    let branch: Vec<usize> = (0..k).filter(|&i| nbrs[i].len() >= 3).collect();

    if max_degree >= 5 {
        return Indefinite;
    }
    if max_degree == 4 {
        return if k == 5 && all_three {
            Affine(AffineType::D(4))
        } else {
            Indefinite
        };
    }

    match branch.len() {
        0 => classify_path(k, &nbrs, &order),
        1 => classify_star(k, branch[0], &nbrs, &order),
        2 if all_three => {
            let leaves_on_branches = (0..k)
                .filter(|&i| nbrs[i].len() == 1)
                .all(|i| branch.contains(&nbrs[i][0]));
            if leaves_on_branches {
                Affine(AffineType::D(k - 1))
            } else {
                Indefinite
            }
        }
        _ => Indefinite,
    }
}

fn classify_path<F>(k: usize, nbrs: &[Vec<usize>], order: &F) -> IrreducibleType
where
    F: Fn(usize, usize) -> u32,
{
    use IrreducibleType::{Affine, Finite, Indefinite};

    let start = (0..k).find(|&i| nbrs[i].len() == 1).expect("a path has an end");
    let mut labels = Vec::with_capacity(k - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let Some(&next) = nbrs[cur].iter().find(|&&j| j != prev) else {
            break;
        };
        labels.push(order(cur, next));
        prev = cur;
        cur = next;
    }
    let reversed: Vec<u32> = labels.iter().rev().copied().collect();
    let matches = |pattern: &[u32]| labels == pattern || reversed == pattern;
    let inner_threes = |l: &[u32]| l.iter().all(|&m| m == 3);

    if inner_threes(&labels) {
        return Finite(FiniteType::A(k));
    }
    let first = labels[0];
    let last = *labels.last().unwrap();
    let middle = &labels[1..labels.len() - 1];
    if first == 4 && last == 4 && inner_threes(middle) {
        return Affine(AffineType::C(k - 1));
    }
    if (first == 4 && inner_threes(&labels[1..])) || (last == 4 && inner_threes(&labels[..labels.len() - 1])) {
        return Finite(FiniteType::B(k));
    }
    if matches(&[3, 4, 3]) {
        Finite(FiniteType::F4)
    } else if matches(&[3, 3, 4, 3]) {
        Affine(AffineType::F4)
    } else if matches(&[5, 3]) {
        Finite(FiniteType::H3)
    } else if matches(&[5, 3, 3]) {
        Finite(FiniteType::H4)
    } else if matches(&[6, 3]) {
        Affine(AffineType::G2)
    } else {
        Indefinite
    }
}

/// One node of degree three; the rest form three arms.
fn classify_star<F>(k: usize, center: usize, nbrs: &[Vec<usize>], order: &F) -> IrreducibleType
where
    F: Fn(usize, usize) -> u32,
{
    use IrreducibleType::{Affine, Finite, Indefinite};

    // Each arm as its list of labels walking away from the center.
    let mut arms: Vec<Vec<u32>> = nbrs[center]
        .iter()
        .map(|&first| {
            let mut labels = vec![order(center, first)];
            let (mut prev, mut cur) = (center, first);
            while let Some(&next) = nbrs[cur].iter().find(|&&j| j != prev) {
                labels.push(order(cur, next));
                prev = cur;
                cur = next;
            }
            labels
        })
        .collect();
    arms.sort_by_key(Vec::len);
    let lengths = [arms[0].len(), arms[1].len(), arms[2].len()];
    let non_three: Vec<(usize, usize, u32)> = arms
        .iter()
        .enumerate()
        .flat_map(|(a, labels)| {
            labels
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 3)
                .map(move |(pos, &m)| (a, pos, m))
        })
        .collect();

    if non_three.is_empty() {
        return match lengths {
            [1, 1, x] => Finite(FiniteType::D(x + 3)),
            [1, 2, 2] => Finite(FiniteType::E6),
            [1, 2, 3] => Finite(FiniteType::E7),
            [1, 2, 4] => Finite(FiniteType::E8),
            [2, 2, 2] => Affine(AffineType::E6),
            [1, 3, 3] => Affine(AffineType::E7),
            [1, 2, 5] => Affine(AffineType::E8),
            _ => Indefinite,
        };
    }
    if let [(arm, pos, 4)] = non_three[..] {
        let terminal = pos + 1 == arms[arm].len();
        let others_short = (0..3).filter(|&a| a != arm).all(|a| arms[a].len() == 1);
        if terminal && others_short {
            return Affine(AffineType::B(k - 1));
        }
    }
    Indefinite
}

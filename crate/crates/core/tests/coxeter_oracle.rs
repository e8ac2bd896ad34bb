//! Table-driven diagram classification against the signature of the
//! cosine matrix, plus the subset invariants of the Coxeter core.

use coxthick::coxeter::{CoxeterMatrix, IrreducibleType, Label};
use coxthick::graph::{Graph, VertexSet};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

const TOL: f64 = 1e-9;
const LABELS: [Label; 6] = [
    Label::Finite(2),
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(5),
    Label::Finite(6),
    Label::Infinite,
];

#[derive(Debug, PartialEq, Eq)]
enum Sign {
    Finite,
    Affine,
    Indefinite,
}

fn numeric(m: &CoxeterMatrix) -> Sign {
    let n = m.n();
    let gram = DMatrix::from_fn(n, n, |i, j| match m.label(i, j) {
        Label::Infinite => -1.0,
        Label::Finite(1) => 1.0,
        Label::Finite(k) => -(std::f64::consts::PI / k as f64).cos(),
    });
    let mut eig: Vec<f64> = SymmetricEigen::new(gram).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    if eig[0] > TOL {
        Sign::Finite
    } else if eig[0].abs() <= TOL && eig[1..].iter().all(|&e| e > TOL) {
        Sign::Affine
    } else {
        Sign::Indefinite
    }
}

fn exact(m: &CoxeterMatrix) -> Option<Sign> {
    let t = m.classify_component(&m.all()).ok()?;
    Some(match t {
        IrreducibleType::Finite(_) => Sign::Finite,
        IrreducibleType::Affine(_) => Sign::Affine,
        IrreducibleType::Indefinite => Sign::Indefinite,
    })
}

/// Compares on one labelling; returns whether it was connected.
fn check(n: usize, labels: &[Label]) -> bool {
    let mut it = labels.iter().copied();
    let m = CoxeterMatrix::from_fn(n, |_, _| it.next().unwrap()).unwrap();
    match exact(&m) {
        None => false,
        Some(sign) => {
            assert_eq!(sign, numeric(&m), "labels {labels:?}");
            true
        }
    }
}

/// Every labelling of the `n(n-1)/2` pairs drawn from `alphabet`.
fn exhaustive(n: usize, alphabet: &[Label]) -> usize {
    let pairs = n * (n - 1) / 2;
    let base = alphabet.len();
    let total = base.pow(pairs as u32);
    let mut connected = 0;
    let mut labels = vec![alphabet[0]; pairs];
    for mut code in 0..total {
        for slot in labels.iter_mut() {
            *slot = alphabet[code % base];
            code /= base;
        }
        connected += check(n, &labels) as usize;
    }
    connected
}

#[test]
fn all_diagrams_up_to_four_nodes() {
    for n in 1..=4 {
        assert!(exhaustive(n, &LABELS) > 0);
    }
}

#[test]
fn five_nodes_without_high_labels() {
    exhaustive(5, &LABELS[..3]);
    exhaustive(5, &[Label::Finite(2), Label::Finite(3), Label::Finite(6), Label::Infinite]);
}

#[test]
fn six_nodes_simply_laced() {
    exhaustive(6, &LABELS[..2]);
}

/// Pair index of `(s, t)`, `s < t`, in the row-major order `from_fn` uses.
fn pair_index(n: usize, s: usize, t: usize) -> usize {
    s * n - s * (s + 1) / 2 + (t - s - 1)
}

/// Trees and unicyclic diagrams on five and six nodes with every edge
/// labelled from {3,4,5,6}; these carry all the branch, path and cycle
/// shapes of the tables at these ranks.
#[test]
fn labelled_trees_and_cycles() {
    let edge_labels = &LABELS[1..5];
    for n in [5usize, 6] {
        let pairs = n * (n - 1) / 2;
        let mut shapes: Vec<Vec<(usize, usize)>> = Vec::new();
        // Trees from Pruefer codes.
        let codes = n.pow(n as u32 - 2);
        for mut c in 0..codes {
            let mut seq = Vec::new();
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let mut degree = vec![1; n];
            for &v in &seq {
                degree[v] += 1;
            }
            let mut edges = Vec::new();
            for &v in &seq {
                let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
                edges.push((leaf.min(v), leaf.max(v)));
                degree[leaf] -= 1;
                degree[v] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
            edges.push((rest[0], rest[1]));
            shapes.push(edges);
        }
        shapes.push((0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect());
        for edges in shapes {
            let k = edges.len();
            for mut code in 0..edge_labels.len().pow(k as u32) {
                let mut labels = vec![Label::Finite(2); pairs];
                for &(s, t) in &edges {
                    labels[pair_index(n, s, t)] = edge_labels[code % edge_labels.len()];
                    code /= edge_labels.len();
                }
                assert!(check(n, &labels));
            }
        }
    }
}

/// Larger affine and finite members of the tables, which the exhaustive
/// ranges above do not reach.
#[test]
fn named_large_diagrams() {
    let cases: &[(usize, &[(usize, usize, u32)], Sign)] = &[
        // E6, E7, E8 and their affine extensions, as arms off node 0.
        (6, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (0, 4, 3), (4, 5, 3)], Sign::Finite),
        (7, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (0, 4, 3), (4, 5, 3), (5, 6, 3)], Sign::Finite),
        (8, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (0, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3)], Sign::Finite),
        (7, &[(0, 1, 3), (1, 2, 3), (0, 3, 3), (3, 4, 3), (0, 5, 3), (5, 6, 3)], Sign::Affine),
        (8, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (3, 4, 3), (0, 5, 3), (5, 6, 3), (6, 7, 3)], Sign::Affine),
        (9, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (0, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (7, 8, 3)], Sign::Affine),
        (10, &[(0, 1, 3), (0, 2, 3), (2, 3, 3), (0, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (7, 8, 3), (8, 9, 3)], Sign::Indefinite),
        // ~B6, ~D7 and a three-branch tree.
        (7, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 4)], Sign::Affine),
        (8, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (5, 7, 3)], Sign::Affine),
        (9, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (3, 4, 3), (4, 5, 3), (4, 8, 3), (5, 6, 3), (5, 7, 3)], Sign::Indefinite),
    ];
    for (n, edges, want) in cases {
        let m = CoxeterMatrix::from_fn(*n, |s, t| {
            edges
                .iter()
                .find(|&&(a, b, _)| (a, b) == (s, t))
                .map_or(Label::Finite(2), |&(_, _, l)| Label::Finite(l))
        })
        .unwrap();
        assert_eq!(&exact(&m).unwrap(), want, "{edges:?}");
        assert_eq!(&numeric(&m), want, "{edges:?}");
    }
}

fn graph_from_bits(n: usize, bits: u32) -> Graph {
    let mut i = 0;
    Graph::from_fn(n, |_, _| {
        i += 1;
        bits >> (i - 1) & 1 == 1
    })
}

#[test]
fn right_angled_spherical_subsets_are_cliques() {
    for n in 0..=6 {
        for bits in 0u32..(1 << (n * (n.max(1) - 1) / 2)) {
            let g = graph_from_bits(n, bits);
            let m = CoxeterMatrix::from_racg(&g);
            for j in 0u64..(1 << n) {
                let s = VertexSet::from_mask(n, j);
                assert_eq!(m.is_spherical(&s).unwrap(), g.is_clique(&s));
            }
        }
    }
}

fn label() -> impl Strategy<Value = Label> {
    prop::sample::select(LABELS.to_vec())
}

proptest! {
    #[test]
    fn random_six_node_diagrams(labels in prop::collection::vec(label(), 15)) {
        check(6, &labels);
    }

    #[test]
    fn perp_of_union_is_intersection(
        labels in prop::collection::vec(label(), 28),
        a in 0u64..256,
        b in 0u64..256,
    ) {
        let mut it = labels.into_iter();
        let m = CoxeterMatrix::from_fn(8, |_, _| it.next().unwrap()).unwrap();
        let (ka, kb) = (VertexSet::from_mask(8, a), VertexSet::from_mask(8, b));
        let lhs = m.perp(&ka.union(&kb)).unwrap();
        let rhs = m.perp(&ka).unwrap().intersection(&m.perp(&kb).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

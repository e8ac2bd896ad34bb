//! Acceptance criteria. Each test prints one PASS/FAIL line per criterion
//! (written straight to stdout so it shows without `--nocapture`).

use std::io::Write;
use std::time::{Duration, Instant};

use coxthick::bounds;
use coxthick::census::{census, graph_from_index};
use coxthick::coxeter::{CoxeterMatrix, Label};
use coxthick::general::{classify_coxeter, saturate_thick, saturate_thick_with, verify_rh, SeedMode};
use coxthick::graph::{Graph, VertexSet};
use coxthick::racg::reference::reference_fixed_point;
use coxthick::racg::{classify_racg, oracle_in_t, thick_fixed_point, thick_fixed_point_ordered, SeedOrder};
use coxthick::random_lab::{
    high_density_experiment, run_sweep, sample_gnp, DensitySchedule, SweepConfig,
};
use coxthick::Status;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "ACCEPTANCE {criterion}: {verdict} ({detail})");
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut i = 0;
    Graph::from_fn(n, |_, _| {
        i += 1;
        bits >> (i - 1) & 1 == 1
    })
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |b| graph_from_bits(n, b))
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut count = 0;
    for g in all_graphs(6) {
        count += 1;
        let thick = classify_racg(&g).status == Status::Thick;
        if thick != oracle_in_t(&g).unwrap() {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = count == 32768 && mismatches == 0 && elapsed <= Duration::from_secs(60);
    report(
        "1 oracle equivalence on all 6-vertex graphs",
        pass,
        &format!("{count} graphs, {mismatches} mismatches, {:.1}s <= 60s", secs(elapsed)),
    );
    assert!(pass);
}

#[test]
fn criterion_2_racg_general_consistency() {
    let start = Instant::now();
    let (mut count, mut mismatches) = (0, 0);
    for n in 0..=6 {
        for g in all_graphs(n) {
            count += 1;
            let racg = classify_racg(&g);
            let general = classify_coxeter(&CoxeterMatrix::from_racg(&g)).unwrap();
            let peripherals_agree = match racg.status {
                Status::RelativelyHyperbolic => general.peripherals.j_list == racg.peripherals,
                _ => general.peripherals.j_list == thick_fixed_point(&g).into_members(),
            };
            if general.status != racg.status || !peripherals_agree {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed <= Duration::from_secs(600);
    report(
        "2 right-angled vs general classifier, n <= 6",
        pass,
        &format!("{count} graphs, {mismatches} mismatches, {:.1}s <= 600s", secs(elapsed)),
    );
    assert!(pass);
}

/// Independent census: oracle thickness and power-set clique counting.
fn brute_census(n: usize) -> (u64, u64) {
    let (mut t, mut c) = (0u64, 0u64);
    for i in 0..1u64 << (n * n.saturating_sub(1) / 2) {
        let g = graph_from_index(n, i);
        if !oracle_in_t(&g).unwrap() {
            continue;
        }
        t += 1;
        let cliques = (0u64..1 << n)
            .filter(|&m| m.count_ones() >= 2 && g.is_clique(&VertexSet::from_mask(n, m)))
            .count() as u64;
        c += cliques + n as u64 + 1;
    }
    (t, c)
}

#[test]
fn criterion_3_census() {
    let r4 = census(4, 0).unwrap();
    let ok4 = (r4.t, r4.c) == (3, 27);
    let mut lines = vec![format!("census(4) = ({}, {}) vs (3, 27)", r4.t, r4.c)];
    let mut ok = ok4;
    for n in [5, 6] {
        let r = census(n, 0).unwrap();
        let b = brute_census(n);
        ok &= (r.t, r.c) == b;
        lines.push(format!("census({n}) = ({}, {}) vs brute force {:?}", r.t, r.c, b));
    }
    let start = Instant::now();
    let r7 = census(7, 0).unwrap();
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(3600);
    lines.push(format!("census(7) = ({}, {}) in {:.1}s <= 3600s", r7.t, r7.c, secs(elapsed)));
    report("3 census regression", ok, &lines.join("; "));
    assert!(ok);
}

/// Multi-hour job; run with `--ignored`.
#[test]
#[ignore]
fn criterion_3_census_nine() {
    let r = census(9, 0).unwrap();
    let pass = (r.t, r.c) == (bounds::T9, bounds::C9);
    report(
        "3 (optional) census(9)",
        pass,
        &format!("({}, {}) vs ({}, {})", r.t, r.c, bounds::T9, bounds::C9),
    );
    assert!(pass);
}

#[test]
fn criterion_4_bounds() {
    let start = Instant::now();
    let f18 = bounds::f(18).unwrap();
    let f18_ok = (f18 - 0.00101).abs() <= 0.00001;

    let mut max_f = 0.0f64;
    let mut argmax = 0;
    for n in 18..=10_000 {
        let v = bounds::f(n).unwrap();
        if v > max_f {
            max_f = v;
            argmax = n;
        }
    }
    let max_ok = max_f < bounds::BETA;

    let pi9 = bounds::pi9(bounds::T9);
    let pi9_ok = (pi9 - 0.78385).abs() <= 0.00001;
    let alpha = bounds::to_f64(
        &bounds::pi_2n_bound_exact(9, bounds::T9, bounds::C9, &bounds::pi9_exact(bounds::T9)).unwrap(),
    );
    let alpha_ok = (alpha - 0.93537).abs() <= 0.0001;
    let chain_ok = bounds::contraction_holds(alpha, bounds::BETA);
    let elapsed = start.elapsed();

    let pass = f18_ok && max_ok && pi9_ok && alpha_ok && chain_ok;
    report(
        "4 bounds",
        pass,
        &format!(
            "f(18) = {f18:.6} vs 0.00101 +- 0.00001 [{}]; max f(18..=10000) = {max_f:.6} at n = {argmax} < 0.03760 [{}]; \
             pi9 = {pi9:.6} vs 0.78385 +- 0.00001 [{}]; pi_18 bound = {alpha:.6} vs 0.93537 +- 0.0001 [{}]; \
             alpha^2 + 0.03760 < alpha [{}]; {:.2}s",
            if f18_ok { "ok" } else { "FAIL" },
            if max_ok { "ok" } else { "FAIL" },
            if pi9_ok { "ok" } else { "FAIL" },
            if alpha_ok { "ok" } else { "FAIL" },
            if chain_ok { "ok" } else { "FAIL" },
            secs(elapsed),
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_table_one() {
    let start = Instant::now();
    let run = |a: &str| {
        run_sweep(&SweepConfig {
            n_values: vec![4000],
            schedule: DensitySchedule::parse(&format!("{a}*log(n)/n")).unwrap(),
            trials: 30,
            master_seed: 7,
            workers: 8,
        })
        .unwrap()
        .aggregates[0]
            .prop_thick
    };
    let dense = run("10");
    let sparse = run("1.95");
    let elapsed = start.elapsed();
    let pass = dense >= 29.0 / 30.0 && sparse <= 2.0 / 30.0 && elapsed <= Duration::from_secs(1800);
    report(
        "5 Table 1 cells at n = 4000",
        pass,
        &format!(
            "a = 10: prop_thick = {dense:.4} >= 29/30; a = 1.95: prop_thick = {sparse:.4} <= 2/30; {:.1}s <= 1800s",
            secs(elapsed)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_6_high_density() {
    let start = Instant::now();
    let r = high_density_experiment(2.0, 200, 2000, 7, 0).unwrap();
    let elapsed = start.elapsed();
    let e1 = (-1.0f64).exp();
    let pass = (r.p_finite - e1).abs() <= 0.04 && (r.p_virtz - e1).abs() <= 0.04 && elapsed <= Duration::from_secs(120);
    report(
        "6 high density, alpha = 2, n = 200",
        pass,
        &format!(
            "P_finite = {:.4}, P_virtZ = {:.4}, target e^-1 = {e1:.4} +- 0.04; mean missing = {:.3}; {:.1}s <= 120s",
            r.p_finite,
            r.p_virtz,
            r.mean_missing_edges,
            secs(elapsed)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_low_density() {
    let start = Instant::now();
    let sweep = run_sweep(&SweepConfig {
        n_values: vec![3000],
        schedule: DensitySchedule::parse("n^-0.9").unwrap(),
        trials: 50,
        master_seed: 2024,
        workers: 0,
    })
    .unwrap();
    let elapsed = start.elapsed();
    let good = sweep.records.iter().filter(|r| r.has_k22 && !r.has_k23).count();
    let relhyp: Vec<_> = sweep
        .records
        .iter()
        .filter(|r| r.status == Status::RelativelyHyperbolic)
        .collect();
    let squares = relhyp.iter().filter(|r| r.peripheral_all_squares).count();
    let pass = good as f64 >= 0.9 * 50.0 && squares == relhyp.len() && elapsed <= Duration::from_secs(1200);
    report(
        "7 low density, p = n^-0.9, n = 3000",
        pass,
        &format!(
            "{good}/50 trials with induced K22 and no induced K23 (need >= 45); \
             {squares}/{} relatively hyperbolic trials with square peripherals; {:.1}s <= 1200s",
            relhyp.len(),
            secs(elapsed)
        ),
    );
    assert!(pass);
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.15..0.85);
    sample_gnp(n, p, rng)
}

fn random_matrix(rng: &mut ChaCha8Rng, max_n: usize) -> CoxeterMatrix {
    let n = rng.random_range(1..=max_n);
    CoxeterMatrix::from_fn(n, |_, _| match rng.random_range(0..13) {
        0..=5 => Label::Finite(2),
        6..=8 => Label::Finite(3),
        9 => Label::Finite(4),
        10 => Label::Finite(6),
        _ => Label::Infinite,
    })
    .unwrap()
}

fn has_k23_subgraph(g: &Graph) -> bool {
    g.missing_edges()
        .into_iter()
        .any(|(u, w)| g.neighbors(u).intersection_len(g.neighbors(w)) >= 3)
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    let mut confluence_failures = 0;
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 8);
        let seed = rng.random();
        let natural = thick_fixed_point(&g);
        if thick_fixed_point_ordered(&g, SeedOrder::Shuffled(seed)) != natural
            || reference_fixed_point(&g, Some(seed)).unwrap() != natural.members()
        {
            confluence_failures += 1;
        }
        let m = random_matrix(&mut rng, 8);
        let base = saturate_thick(&m).unwrap().j_list;
        let shuffled = saturate_thick_with(&m, SeedMode::Minimal, SeedOrder::Shuffled(seed)).unwrap().j_list;
        let full = saturate_thick_with(&m, SeedMode::Full, SeedOrder::Shuffled(seed)).unwrap().j_list;
        if shuffled != base || full != base {
            confluence_failures += 1;
        }
    }

    let (mut relhyp, mut certificate_failures) = (0, 0);
    for _ in 0..10_000 {
        let g = random_graph(&mut rng, 12);
        let r = classify_racg(&g);
        if r.status == Status::RelativelyHyperbolic {
            relhyp += 1;
            if !verify_rh(&CoxeterMatrix::from_racg(&g), &r.peripherals).unwrap().passed() {
                certificate_failures += 1;
            }
        }
    }

    let (mut thick, mut lemma_failures) = (0, 0);
    for n in 0..=6 {
        for g in all_graphs(n) {
            if classify_racg(&g).status == Status::Thick {
                thick += 1;
                let square = n == 4 && g.edge_count() == 4;
                if !square && !has_k23_subgraph(&g) {
                    lemma_failures += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = confluence_failures == 0 && certificate_failures == 0 && lemma_failures == 0;
    report(
        "8 property suites",
        pass,
        &format!(
            "confluence: {confluence_failures} failures over 1000 graphs and 1000 matrices; \
             RH certificate: {certificate_failures} failures over {relhyp} relatively hyperbolic graphs of 10000; \
             square-or-K23: {lemma_failures} failures over {thick} thick graphs; {:.1}s",
            secs(elapsed)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_determinism() {
    let csv = |workers: usize| {
        let r = run_sweep(&SweepConfig {
            n_values: vec![30, 60],
            schedule: DensitySchedule::parse("2*log(n)/n").unwrap(),
            trials: 20,
            master_seed: 99,
            workers,
        })
        .unwrap();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        r.write_trials(&mut a).unwrap();
        r.write_aggregates(&mut b).unwrap();
        (a, b)
    };
    let one = csv(1);
    let four = csv(4);
    let pass = one == four;
    report(
        "9 sweep determinism across worker counts",
        pass,
        &format!("1 vs 4 workers: {} + {} bytes, identical = {pass}", one.0.len(), one.1.len()),
    );
    assert!(pass);
}

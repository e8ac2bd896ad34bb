//! Erdős–Rényi experiments: sample `G(n, p)`, classify, and record the
//! measurements behind the density-regime results.
//!
//! Each trial draws from its own ChaCha stream seeded by a hash of
//! `(master seed, n, trial)`, so results do not depend on how trials are
//! spread across workers.

mod density;

pub use density::{DensityError, DensitySchedule};

use std::io;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::racg::{classify_racg, RacgReport};
use crate::Status;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Each pair is an edge independently with probability `p`.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    Graph::from_fn(n, |_, _| rng.random::<f64>() < p)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the random stream for one trial.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    splitmix(splitmix(splitmix(master) ^ n as u64) ^ trial as u64)
}

pub fn trial_rng(master: u64, n: usize, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, n, trial))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelhypProfile {
    /// Relatively hyperbolic with every peripheral an induced square.
    pub peripheral_all_squares: bool,
    /// Largest component size over `n`.
    pub giant_fraction: f64,
    /// Components that are not trees.
    pub nontree_components: usize,
}

pub fn relhyp_profile(g: &Graph) -> RelhypProfile {
    profile_from(g, &classify_racg(g))
}

fn profile_from(g: &Graph, report: &RacgReport) -> RelhypProfile {
    let census = g.component_census();
    let giant = census.iter().map(|c| c.size).max().unwrap_or(0);
    RelhypProfile {
        peripheral_all_squares: report.status == Status::RelativelyHyperbolic
            && report.peripherals.iter().all(|p| p.len() == 4),
        giant_fraction: if g.n() == 0 { 0.0 } else { giant as f64 / g.n() as f64 },
        nontree_components: census.iter().filter(|c| !c.is_tree).count(),
    }
}

/// One sampled graph and its measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub p: f64,
    pub trial: usize,
    pub status: Status,
    pub thick: bool,
    pub order0: bool,
    pub has_k22: bool,
    pub has_k23: bool,
    pub peripheral_all_squares: bool,
    pub giant_fraction: f64,
    pub nontree_components: usize,
    pub missing_edges: usize,
}

impl TrialRecord {
    const HEADER: [&'static str; 12] = [
        "n",
        "p",
        "trial",
        "status",
        "thick",
        "order0",
        "has_k22",
        "has_k23",
        "peripheral_all_squares",
        "giant_fraction",
        "nontree_components",
        "missing_edges",
    ];

    fn fields(&self) -> [String; 12] {
        [
            self.n.to_string(),
            self.p.to_string(),
            self.trial.to_string(),
            self.status.to_string(),
            self.thick.to_string(),
            self.order0.to_string(),
            self.has_k22.to_string(),
            self.has_k23.to_string(),
            self.peripheral_all_squares.to_string(),
            self.giant_fraction.to_string(),
            self.nontree_components.to_string(),
            self.missing_edges.to_string(),
        ]
    }
}

/// Samples and measures trial `trial` at size `n`.
pub fn run_trial(master_seed: u64, n: usize, p: f64, trial: usize) -> TrialRecord {
    let g = sample_gnp(n, p, &mut trial_rng(master_seed, n, trial));
    let report = classify_racg(&g);
    let profile = profile_from(&g, &report);
    TrialRecord {
        n,
        p,
        trial,
        status: report.status,
        thick: report.status == Status::Thick,
        order0: report.order0,
        has_k22: g.has_induced_k22(),
        has_k23: g.contains_induced_k23(),
        peripheral_all_squares: profile.peripheral_all_squares,
        giant_fraction: profile.giant_fraction,
        nontree_components: profile.nontree_components,
        missing_edges: g.missing_edge_count(),
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub schedule: DensitySchedule,
    pub trials: usize,
    pub master_seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

/// Per-`n` proportions of each status.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub prop_thick: f64,
    pub prop_relhyp: f64,
    pub prop_hyperbolic: f64,
    pub prop_finite: f64,
    pub prop_virtz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<AggregateRow>,
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, LabError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Config(e.to_string()))
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, LabError> {
    if config.trials == 0 {
        return Err(LabError::Config("trials must be at least 1".into()));
    }
    if config.n_values.is_empty() {
        return Err(LabError::Config("no values of n given".into()));
    }
    let mut jobs = Vec::with_capacity(config.n_values.len() * config.trials);
    let mut densities = Vec::with_capacity(config.n_values.len());
    for &n in &config.n_values {
        let p = config.schedule.eval(n)?;
        densities.push(p);
        jobs.extend((0..config.trials).map(|t| (n, p, t)));
    }
    let records: Vec<TrialRecord> = pool(config.workers)?.install(|| {
        jobs.par_iter()
            .map(|&(n, p, t)| run_trial(config.master_seed, n, p, t))
            .collect()
    });
    let aggregates = config
        .n_values
        .iter()
        .zip(&densities)
        .enumerate()
        .map(|(i, (&n, &p))| {
            let rows = &records[i * config.trials..(i + 1) * config.trials];
            let prop = |s: Status| rows.iter().filter(|r| r.status == s).count() as f64 / rows.len() as f64;
            AggregateRow {
                n,
                p,
                trials: rows.len(),
                prop_thick: prop(Status::Thick),
                prop_relhyp: prop(Status::RelativelyHyperbolic),
                prop_hyperbolic: prop(Status::Hyperbolic),
                prop_finite: prop(Status::Finite),
                prop_virtz: prop(Status::VirtuallyCyclic),
            }
        })
        .collect();
    Ok(SweepReport { records, aggregates })
}

impl SweepReport {
    pub fn write_trials<W: io::Write>(&self, out: W) -> Result<(), LabError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TrialRecord::HEADER)?;
        for r in &self.records {
            w.write_record(r.fields())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_aggregates<W: io::Write>(&self, out: W) -> Result<(), LabError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "p",
            "trials",
            "prop_thick",
            "prop_relhyp",
            "prop_hyperbolic",
            "prop_finite",
            "prop_virtz",
        ])?;
        for a in &self.aggregates {
            w.write_record([
                a.n.to_string(),
                a.p.to_string(),
                a.trials.to_string(),
                a.prop_thick.to_string(),
                a.prop_relhyp.to_string(),
                a.prop_hyperbolic.to_string(),
                a.prop_finite.to_string(),
                a.prop_virtz.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `trials.csv` and `aggregate.csv` into `dir`, creating it.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(), LabError> {
        std::fs::create_dir_all(dir)?;
        self.write_trials(std::fs::File::create(dir.join("trials.csv"))?)?;
        self.write_aggregates(std::fs::File::create(dir.join("aggregate.csv"))?)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighDensityReport {
    pub p_finite: f64,
    pub p_virtz: f64,
    pub p_other: f64,
    pub mean_missing_edges: f64,
    /// Trials with at least two missing edges, pairwise disjoint; these
    /// groups are products of infinite dihedral groups and thick of order 0.
    pub disjoint_missing: usize,
}

/// Samples `G(n, 1 - alpha/n^2)` and sorts trials by missing-edge count.
pub fn high_density_experiment(
    alpha: f64,
    n: usize,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<HighDensityReport, LabError> {
    let q = alpha / (n as f64 * n as f64);
    if !(0.0..=1.0).contains(&q) {
        return Err(LabError::Config(format!("alpha/n^2 = {q} must lie in [0, 1]")));
    }
    if trials == 0 {
        return Err(LabError::Config("trials must be at least 1".into()));
    }
    let p = 1.0 - q;
    let counts: Vec<(usize, bool)> = pool(workers)?.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = sample_gnp(n, p, &mut trial_rng(seed, n, t));
                let missing = g.missing_edges();
                let mut touched = vec![false; n];
                let disjoint = missing.len() >= 2
                    && missing.iter().all(|&(u, v)| {
                        let fresh = !touched[u] && !touched[v];
                        touched[u] = true;
                        touched[v] = true;
                        fresh
                    });
                (missing.len(), disjoint)
            })
            .collect()
    });
    let frac = |k: usize| counts.iter().filter(|c| c.0 == k).count() as f64 / trials as f64;
    let (p_finite, p_virtz) = (frac(0), frac(1));
    Ok(HighDensityReport {
        p_finite,
        p_virtz,
        p_other: 1.0 - p_finite - p_virtz,
        mean_missing_edges: counts.iter().map(|c| c.0 as f64).sum::<f64>() / trials as f64,
        disjoint_missing: counts.iter().filter(|c| c.1).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn extreme_densities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_gnp(30, 0.0, &mut rng).edge_count(), 0);
        assert_eq!(sample_gnp(30, 1.0, &mut rng).edge_count(), 435);
    }

    #[test]
    fn edge_counts_concentrate() {
        let pairs = 1000.0 * 999.0 / 2.0;
        let sd = (pairs * 0.25f64).sqrt();
        for seed in 0..100 {
            let g = sample_gnp(1000, 0.5, &mut trial_rng(seed, 1000, 0));
            assert!((g.edge_count() as f64 - pairs / 2.0).abs() <= 4.0 * sd);
        }
    }

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        let a = sample_gnp(50, 0.3, &mut trial_rng(7, 50, 3));
        assert_eq!(a, sample_gnp(50, 0.3, &mut trial_rng(7, 50, 3)));
        assert_ne!(a, sample_gnp(50, 0.3, &mut trial_rng(7, 50, 4)));
        assert_ne!(trial_seed(7, 50, 3), trial_seed(7, 51, 3));
    }

    #[test]
    fn profiles() {
        let pendant = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]).unwrap();
        let p = relhyp_profile(&pendant);
        assert!(p.peripheral_all_squares);
        assert_eq!(p.giant_fraction, 1.0);
        assert_eq!(p.nontree_components, 1);
        assert!(!relhyp_profile(&Graph::cycle(5)).peripheral_all_squares);
        let k23 = Graph::complete_bipartite(2, 3).disjoint_union(&Graph::empty(1));
        let r = classify_racg(&k23);
        assert_eq!(r.peripherals, vec![VertexSet::from_vertices(6, 0..5)]);
        assert!(!relhyp_profile(&k23).peripheral_all_squares);
    }

    #[test]
    fn high_density_edge_cases() {
        let r = high_density_experiment(0.0, 50, 20, 1, 1).unwrap();
        assert_eq!(r.p_finite, 1.0);
        assert_eq!(r.mean_missing_edges, 0.0);
        assert!(high_density_experiment(3000.0, 50, 20, 1, 1).is_err());
    }

    #[test]
    fn sweep_rejects_bad_schedules() {
        let config = SweepConfig {
            n_values: vec![3],
            schedule: DensitySchedule::parse("n").unwrap(),
            trials: 2,
            master_seed: 1,
            workers: 1,
        };
        assert!(matches!(run_sweep(&config), Err(LabError::Density(DensityError::OutOfRange { n: 3, .. }))));
    }
}

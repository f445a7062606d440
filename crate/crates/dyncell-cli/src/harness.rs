//! Batch experiment driver: matched-budget solver comparisons over
//! independent topologies, empirical utility CDFs, and scaling sweeps.
//!
//! Seeding is layered so results are reproducible end-to-end and adding an
//! algorithm never perturbs another's stream: topology `t` is generated
//! from `base_seed ^ t`, and each (algorithm, topology) run gets an
//! independent mixed seed. Runs may execute in parallel; outputs are keyed
//! by (topology index, algorithm) so aggregation is order-insensitive.

use std::time::Instant;

use dyncell_core::association::{check_constraints, AssociationError, AssociationSolution};
use dyncell_core::channel::{ChannelError, LinkBudgetParams};
use dyncell_core::gwo::{gwo_optimize, GwoConfig, GwoError, SolveOutcome};
use dyncell_core::pso::{pso_optimize, PsoConfig, PsoError, PsoParams};
use dyncell_core::scenario::{generate_topology, ScenarioError, Topology, TopologyConfig};

use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Gwo,
    Pso,
}

impl Algorithm {
    pub const fn tag(&self) -> &'static str {
        match self {
            Self::Gwo => "gwo",
            Self::Pso => "pso",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "gwo" => Ok(Self::Gwo),
            "pso" => Ok(Self::Pso),
            _ => Err(()),
        }
    }
}

/// One batch experiment: shared topologies, shared channel, matched
/// `pop_size × g_max` budgets for every requested algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topology: TopologyConfig,
    pub channel: LinkBudgetParams,
    pub pop_size: usize,
    pub g_max: usize,
    pub pso: PsoParams,
    pub num_topologies: usize,
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
}

/// One run's output row.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub algorithm: Algorithm,
    pub topology_idx: usize,
    /// Solver seed for this run (derived from the base seed).
    pub seed: u64,
    pub final_utility_bps: f64,
    pub served_fraction: f64,
    pub wall_time_s: f64,
    /// Best-so-far utility per generation, length `g_max + 1`.
    pub trace: Vec<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Gwo(#[from] GwoError),
    #[error(transparent)]
    Pso(#[from] PsoError),
    #[error(transparent)]
    Association(#[from] AssociationError),
    #[error("{algorithm} returned an infeasible solution on topology {topology_idx}: {report}")]
    InfeasibleSolution {
        algorithm: Algorithm,
        topology_idx: usize,
        report: String,
    },
    #[error("no runs match algorithm `{0}`")]
    EmptySelection(Algorithm),
    #[error("scaling sweep needs at least one UE count")]
    EmptyCounts,
    #[error("config requires at least one topology and one algorithm")]
    EmptyBatch,
    #[error("failed to build the worker pool: {0}")]
    Pool(String),
}

/// Topology `t` uses seed `base_seed ^ t`.
pub fn topology_seed(base_seed: u64, topology_idx: usize) -> u64 {
    base_seed ^ topology_idx as u64
}

/// Independent solver stream per (algorithm, topology) pair.
pub fn solver_seed(base_seed: u64, algorithm: Algorithm, topology_idx: usize) -> u64 {
    let domain = match algorithm {
        Algorithm::Gwo => 0x67776f,
        Algorithm::Pso => 0x70736f,
    };
    splitmix64(base_seed ^ splitmix64(domain) ^ topology_idx as u64)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// A solved run together with its decoded solution (the harness re-checks
/// feasibility before anything is exported).
#[derive(Debug, Clone)]
pub struct SingleRun {
    pub metrics: RunMetrics,
    pub solution: AssociationSolution,
}

/// Runs one algorithm on one topology with the batch's derived seed.
pub fn run_solver(
    config: &ExperimentConfig,
    topology: &Topology,
    algorithm: Algorithm,
    topology_idx: usize,
) -> Result<SingleRun, HarnessError> {
    let seed = solver_seed(config.base_seed, algorithm, topology_idx);
    let start = Instant::now();
    let outcome: SolveOutcome = match algorithm {
        Algorithm::Gwo => gwo_optimize(
            topology,
            &config.channel,
            &GwoConfig {
                pop_size: config.pop_size,
                g_max: config.g_max,
            },
            seed,
        )?,
        Algorithm::Pso => pso_optimize(
            topology,
            &config.channel,
            &PsoConfig {
                pop_size: config.pop_size,
                g_max: config.g_max,
                params: config.pso,
            },
            seed,
        )?,
    };
    let wall_time_s = start.elapsed().as_secs_f64();

    let report = check_constraints(&outcome.best, topology)?;
    if !report.is_empty() {
        return Err(HarnessError::InfeasibleSolution {
            algorithm,
            topology_idx,
            report: report.to_string(),
        });
    }

    let metrics = RunMetrics {
        algorithm,
        topology_idx,
        seed,
        final_utility_bps: outcome.final_utility(),
        served_fraction: outcome.best.served_fraction(),
        wall_time_s,
        trace: outcome.trace.clone(),
    };
    Ok(SingleRun {
        metrics,
        solution: outcome.best,
    })
}

/// Runs every requested algorithm on every topology. Deterministic per
/// `base_seed` apart from wall times; `jobs` bounds worker threads.
pub fn run_batch(
    config: &ExperimentConfig,
    jobs: Option<usize>,
) -> Result<Vec<RunMetrics>, HarnessError> {
    if config.num_topologies == 0 || config.algorithms.is_empty() {
        return Err(HarnessError::EmptyBatch);
    }
    let topologies = (0..config.num_topologies)
        .map(|t| generate_topology(&config.topology, topology_seed(config.base_seed, t)))
        .collect::<Result<Vec<_>, _>>()?;

    let tasks: Vec<(usize, Algorithm)> = (0..config.num_topologies)
        .flat_map(|t| config.algorithms.iter().map(move |&a| (t, a)))
        .collect();

    let run_all = || {
        tasks
            .par_iter()
            .map(|&(t, algorithm)| {
                run_solver(config, &topologies[t], algorithm, t).map(|run| run.metrics)
            })
            .collect::<Result<Vec<_>, _>>()
    };

    match jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?
            .install(run_all),
        _ => run_all(),
    }
}

/// Empirical CDF of final utilities for one algorithm: one step per
/// distinct observed utility, ending at probability 1.
pub fn utility_cdf(
    metrics: &[RunMetrics],
    algorithm: Algorithm,
) -> Result<Vec<(f64, f64)>, HarnessError> {
    let mut utilities: Vec<f64> = metrics
        .iter()
        .filter(|m| m.algorithm == algorithm)
        .map(|m| m.final_utility_bps)
        .collect();
    if utilities.is_empty() {
        return Err(HarnessError::EmptySelection(algorithm));
    }
    utilities.sort_by(f64::total_cmp);
    let n = utilities.len() as f64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (k, utility) in utilities.iter().enumerate() {
        let probability = (k + 1) as f64 / n;
        match points.last_mut() {
            Some(last) if last.0 == *utility => last.1 = probability,
            _ => points.push((*utility, probability)),
        }
    }
    Ok(points)
}

/// Per-count averages from a scaling sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n_ue: usize,
    pub algorithm: Algorithm,
    pub mean_utility_bps: f64,
    pub mean_served_fraction: f64,
}

/// Reruns the batch for each UE count and averages per algorithm. Every
/// count reuses the same base seed, so repeated counts repeat exactly.
pub fn scaling_sweep(
    config: &ExperimentConfig,
    ue_counts: &[usize],
    jobs: Option<usize>,
) -> Result<Vec<SweepPoint>, HarnessError> {
    if ue_counts.is_empty() {
        return Err(HarnessError::EmptyCounts);
    }
    let mut points = Vec::with_capacity(ue_counts.len() * config.algorithms.len());
    for &n_ue in ue_counts {
        let mut scaled = config.clone();
        scaled.topology.n_ue = n_ue;
        let metrics = run_batch(&scaled, jobs)?;
        for &algorithm in &config.algorithms {
            let selected: Vec<&RunMetrics> =
                metrics.iter().filter(|m| m.algorithm == algorithm).collect();
            let n = selected.len() as f64;
            points.push(SweepPoint {
                n_ue,
                algorithm,
                mean_utility_bps: selected.iter().map(|m| m.final_utility_bps).sum::<f64>() / n,
                mean_served_fraction: selected.iter().map(|m| m.served_fraction).sum::<f64>() / n,
            });
        }
    }
    Ok(points)
}

/// Per-algorithm aggregate over one batch.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_utility_bps: f64,
    pub median_utility_bps: f64,
    pub mean_served_fraction: f64,
    /// Topologies where this algorithm strictly beat every other one.
    pub wins: usize,
}

pub fn summarize(metrics: &[RunMetrics]) -> Vec<AlgorithmSummary> {
    let mut algorithms: Vec<Algorithm> = Vec::new();
    for m in metrics {
        if !algorithms.contains(&m.algorithm) {
            algorithms.push(m.algorithm);
        }
    }
    let mut topologies: Vec<usize> = metrics.iter().map(|m| m.topology_idx).collect();
    topologies.sort_unstable();
    topologies.dedup();

    algorithms
        .iter()
        .map(|&algorithm| {
            let mut utilities: Vec<f64> = metrics
                .iter()
                .filter(|m| m.algorithm == algorithm)
                .map(|m| m.final_utility_bps)
                .collect();
            utilities.sort_by(f64::total_cmp);
            let runs = utilities.len();
            let mean = utilities.iter().sum::<f64>() / runs as f64;
            let median = if runs % 2 == 1 {
                utilities[runs / 2]
            } else {
                (utilities[runs / 2 - 1] + utilities[runs / 2]) / 2.0
            };
            let served = metrics
                .iter()
                .filter(|m| m.algorithm == algorithm)
                .map(|m| m.served_fraction)
                .sum::<f64>()
                / runs as f64;

            let wins = topologies
                .iter()
                .filter(|&&t| {
                    let mine = metrics
                        .iter()
                        .find(|m| m.algorithm == algorithm && m.topology_idx == t)
                        .map(|m| m.final_utility_bps);
                    match mine {
                        None => false,
                        Some(mine) => metrics
                            .iter()
                            .filter(|m| m.topology_idx == t && m.algorithm != algorithm)
                            .all(|other| mine > other.final_utility_bps),
                    }
                })
                .count();

            AlgorithmSummary {
                algorithm,
                runs,
                mean_utility_bps: mean,
                median_utility_bps: median,
                mean_served_fraction: served,
                wins,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            topology: TopologyConfig {
                n_bs: 2,
                n_ue: 8,
                radius_m: 20.0,
                ..TopologyConfig::default()
            },
            channel: LinkBudgetParams::default(),
            pop_size: 8,
            g_max: 10,
            pso: PsoParams::default(),
            num_topologies: 2,
            base_seed: 5,
            algorithms: vec![Algorithm::Gwo, Algorithm::Pso],
        }
    }

    #[test]
    fn batch_produces_one_row_per_task_in_order() {
        let config = tiny_config();
        let metrics = run_batch(&config, Some(2)).unwrap();
        assert_eq!(metrics.len(), 4);
        let keys: Vec<(usize, Algorithm)> =
            metrics.iter().map(|m| (m.topology_idx, m.algorithm)).collect();
        assert_eq!(
            keys,
            vec![
                (0, Algorithm::Gwo),
                (0, Algorithm::Pso),
                (1, Algorithm::Gwo),
                (1, Algorithm::Pso),
            ]
        );
        for m in &metrics {
            assert_eq!(m.trace.len(), config.g_max + 1);
            assert!(m.trace.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(*m.trace.last().unwrap(), m.final_utility_bps);
        }
    }

    #[test]
    fn batch_is_deterministic_apart_from_wall_time() {
        let config = tiny_config();
        let a = run_batch(&config, Some(1)).unwrap();
        let b = run_batch(&config, Some(3)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.algorithm, y.algorithm);
            assert_eq!(x.topology_idx, y.topology_idx);
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.final_utility_bps, y.final_utility_bps);
            assert_eq!(x.served_fraction, y.served_fraction);
            assert_eq!(x.trace, y.trace);
        }
    }

    #[test]
    fn single_run_single_algorithm_counts() {
        let mut config = tiny_config();
        config.algorithms = vec![Algorithm::Gwo];
        config.num_topologies = 1;
        let metrics = run_batch(&config, None).unwrap();
        assert_eq!(metrics.len(), 1);
    }

    #[test]
    fn seed_derivations_are_stable_and_disjoint() {
        assert_eq!(topology_seed(10, 3), 10 ^ 3);
        let g0 = solver_seed(1, Algorithm::Gwo, 0);
        let g1 = solver_seed(1, Algorithm::Gwo, 1);
        let p0 = solver_seed(1, Algorithm::Pso, 0);
        assert_ne!(g0, g1);
        assert_ne!(g0, p0);
        assert_eq!(g0, solver_seed(1, Algorithm::Gwo, 0));
    }

    #[test]
    fn cdf_steps_and_terminates_at_one() {
        let mk = |algorithm, utility| RunMetrics {
            algorithm,
            topology_idx: 0,
            seed: 0,
            final_utility_bps: utility,
            served_fraction: 1.0,
            wall_time_s: 0.0,
            trace: vec![utility],
        };
        let single = vec![mk(Algorithm::Gwo, 5.0)];
        assert_eq!(utility_cdf(&single, Algorithm::Gwo).unwrap(), vec![(5.0, 1.0)]);

        let pair = vec![mk(Algorithm::Gwo, 4.0), mk(Algorithm::Gwo, 2.0)];
        assert_eq!(
            utility_cdf(&pair, Algorithm::Gwo).unwrap(),
            vec![(2.0, 0.5), (4.0, 1.0)]
        );

        let dup = vec![
            mk(Algorithm::Gwo, 3.0),
            mk(Algorithm::Gwo, 3.0),
            mk(Algorithm::Gwo, 7.0),
        ];
        let cdf = utility_cdf(&dup, Algorithm::Gwo).unwrap();
        assert_eq!(cdf.len(), 2);
        assert_eq!(cdf.last().unwrap().1, 1.0);
        assert!(cdf.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1));

        assert!(matches!(
            utility_cdf(&single, Algorithm::Pso),
            Err(HarnessError::EmptySelection(Algorithm::Pso))
        ));
    }

    #[test]
    fn sweep_repeats_counts_identically() {
        let mut config = tiny_config();
        config.num_topologies = 1;
        config.algorithms = vec![Algorithm::Gwo];
        let points = scaling_sweep(&config, &[6, 6], None).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].mean_utility_bps, points[1].mean_utility_bps);
        assert_eq!(points[0].mean_served_fraction, points[1].mean_served_fraction);
        assert!(matches!(
            scaling_sweep(&config, &[], None),
            Err(HarnessError::EmptyCounts)
        ));
    }

    #[test]
    fn summary_counts_wins_per_topology() {
        let mk = |algorithm, topology_idx, utility| RunMetrics {
            algorithm,
            topology_idx,
            seed: 0,
            final_utility_bps: utility,
            served_fraction: 0.5,
            wall_time_s: 0.0,
            trace: vec![utility],
        };
        let metrics = vec![
            mk(Algorithm::Gwo, 0, 10.0),
            mk(Algorithm::Pso, 0, 8.0),
            mk(Algorithm::Gwo, 1, 5.0),
            mk(Algorithm::Pso, 1, 6.0),
            mk(Algorithm::Gwo, 2, 4.0),
            mk(Algorithm::Pso, 2, 4.0),
        ];
        let summary = summarize(&metrics);
        let gwo = summary.iter().find(|s| s.algorithm == Algorithm::Gwo).unwrap();
        let pso = summary.iter().find(|s| s.algorithm == Algorithm::Pso).unwrap();
        assert_eq!(gwo.wins, 1);
        assert_eq!(pso.wins, 1);
        assert_eq!(gwo.runs, 3);
        assert_eq!(gwo.median_utility_bps, 5.0);
    }
}

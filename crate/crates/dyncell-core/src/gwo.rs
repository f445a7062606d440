//! Grey Wolf Optimizer over association position vectors.
//!
//! The population moves toward the blended pull of the three current
//! leaders α, β, δ. For each dimension and each leader, with fresh uniform
//! draws f¹, f² per (wolf, dimension, leader):
//!
//! ```text
//! A = a·(2f¹ − 1)        a decays linearly 2 → 0 over the run
//! K = 2f²
//! D = |K·x_leader − x|
//! pull(leader) = x_leader − A·D
//! x' = (pull(α) + pull(β) + pull(δ)) / 3, clamped to [0, N_b]
//! ```
//!
//! Population size and generation count are the only tunables.

use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::association::{AssociationProblem, AssociationSolution, PositionVector, ScoredPosition};
use crate::channel::LinkBudgetParams;
use crate::math;
use crate::scenario::Topology;

/// Source of U[0,1] draws for the position update. Any `RngCore`
/// implementor qualifies; tests can pin exact values instead.
pub trait UnitSampler {
    fn next_unit(&mut self) -> f64;
}

impl<R: RngCore> UnitSampler for R {
    fn next_unit(&mut self) -> f64 {
        self.random::<f64>()
    }
}

/// Linear control schedule: `a = 2·(1 − generation/g_max)`, so a(0) = 2
/// and a(g_max) = 0.
pub fn control_schedule(generation: usize, g_max: usize) -> f64 {
    debug_assert!(g_max >= 1 && generation <= g_max);
    2.0 * (1.0 - generation as f64 / g_max as f64)
}

/// The current leader triple, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaders {
    pub alpha: ScoredPosition,
    pub beta: ScoredPosition,
    pub delta: ScoredPosition,
}

/// Per-leader pull on one dimension: `x_leader − A·|K·x_leader − x|` with
/// `A = a·(2f1 − 1)` and `K = 2f2`.
pub fn leader_pull(x: f64, leader: f64, control_a: f64, f1: f64, f2: f64) -> f64 {
    let a_coeff = control_a * (2.0 * f1 - 1.0);
    let k_coeff = 2.0 * f2;
    let dist = math::abs(k_coeff * leader - x);
    leader - a_coeff * dist
}

/// Moves one wolf: every dimension becomes the mean of the three leader
/// pulls, clamped to [0, n_bs]. Draw order is fixed: for each dimension,
/// for each of α, β, δ, draw f¹ then f².
pub fn wolf_update<S: UnitSampler>(
    current: &PositionVector,
    leaders: &Leaders,
    control_a: f64,
    n_bs: usize,
    sampler: &mut S,
) -> Result<PositionVector, GwoError> {
    let dims = current.len();
    if leaders.alpha.position.len() != dims
        || leaders.beta.position.len() != dims
        || leaders.delta.position.len() != dims
    {
        return Err(GwoError::LengthMismatch {
            expected: dims,
            got: leaders.alpha.position.len(),
        });
    }
    let mut values = Vec::with_capacity(dims);
    for n in 0..dims {
        let x = current.values()[n];
        let mut acc = 0.0;
        for leader in [&leaders.alpha, &leaders.beta, &leaders.delta] {
            let f1 = sampler.next_unit();
            let f2 = sampler.next_unit();
            acc += leader_pull(x, leader.position.values()[n], control_a, f1, f2);
        }
        values.push(acc / 3.0);
    }
    Ok(PositionVector::new(values, n_bs))
}

/// Working state of one GWO run.
#[derive(Debug, Clone)]
pub struct SwarmState {
    positions: Vec<PositionVector>,
    fitnesses: Vec<f64>,
    leaders: Leaders,
    generation: usize,
    control_a: f64,
    best: ScoredPosition,
    trace: Vec<f64>,
}

impl SwarmState {
    /// Draws `pop_size` positions uniformly over [0, N_b]^N_ue, evaluates
    /// them, and selects the initial leaders.
    pub fn initialise<R: Rng>(
        problem: &AssociationProblem,
        pop_size: usize,
        rng: &mut R,
    ) -> Result<Self, GwoError> {
        if pop_size < 4 {
            return Err(GwoError::PopulationTooSmall { got: pop_size });
        }
        let n_bs = problem.n_bs() as f64;
        let positions: Vec<PositionVector> = (0..pop_size)
            .map(|_| {
                let values = (0..problem.n_ue()).map(|_| rng.random::<f64>() * n_bs).collect();
                PositionVector::new(values, problem.n_bs())
            })
            .collect();
        let fitnesses: Vec<f64> = positions
            .iter()
            .map(|p| problem.utility(p).expect("population matches problem dimension"))
            .collect();
        let leaders = select_leaders(&positions, &fitnesses);
        let best = leaders.alpha.clone();
        let trace = alloc::vec![best.fitness];
        Ok(Self {
            positions,
            fitnesses,
            leaders,
            generation: 0,
            control_a: 2.0,
            best,
            trace,
        })
    }

    /// One generation: move every wolf against the current leaders with
    /// the control value of the current generation, re-evaluate, and fold
    /// improvements into the leader triple. A leader slot only changes
    /// when a wolf strictly improves on it, so leaders never regress and
    /// the α slot doubles as the best-ever solution.
    pub fn advance<R: Rng>(
        &mut self,
        problem: &AssociationProblem,
        g_max: usize,
        rng: &mut R,
    ) -> Result<(), GwoError> {
        let control_a = control_schedule(self.generation.min(g_max), g_max);
        let leaders = self.leaders.clone();
        for k in 0..self.positions.len() {
            let moved = wolf_update(&self.positions[k], &leaders, control_a, problem.n_bs(), rng)?;
            self.fitnesses[k] = problem
                .utility(&moved)
                .expect("population matches problem dimension");
            self.positions[k] = moved;
        }
        merge_leaders(&mut self.leaders, &self.positions, &self.fitnesses);
        self.best = self.leaders.alpha.clone();
        self.generation += 1;
        self.control_a = control_a;
        self.trace.push(self.best.fitness);
        Ok(())
    }

    pub fn leaders(&self) -> &Leaders {
        &self.leaders
    }

    pub fn positions(&self) -> &[PositionVector] {
        &self.positions
    }

    pub fn fitnesses(&self) -> &[f64] {
        &self.fitnesses
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    /// Control scalar used by the most recent update (2.0 before any).
    pub fn control_a(&self) -> f64 {
        self.control_a
    }

    /// Best-ever scored position; never regresses.
    pub fn best(&self) -> &ScoredPosition {
        &self.best
    }

    /// Best-so-far utility after initialisation and after each generation.
    pub fn trace(&self) -> &[f64] {
        &self.trace
    }
}

/// Top three of the population by fitness; equal fitness resolves to the
/// lower index.
fn select_leaders(positions: &[PositionVector], fitnesses: &[f64]) -> Leaders {
    let mut order: Vec<usize> = (0..positions.len()).collect();
    order.sort_unstable_by(|&i, &j| fitnesses[j].total_cmp(&fitnesses[i]).then(i.cmp(&j)));
    let scored = |idx: usize| ScoredPosition {
        position: positions[order[idx]].clone(),
        fitness: fitnesses[order[idx]],
    };
    Leaders {
        alpha: scored(0),
        beta: scored(1),
        delta: scored(2),
    }
}

/// Folds a re-evaluated population into the leader triple: scanning in
/// index order, a wolf displaces a slot only when strictly better, so the
/// triple stays the top three of everything evaluated so far and ties keep
/// the earlier holder.
fn merge_leaders(leaders: &mut Leaders, positions: &[PositionVector], fitnesses: &[f64]) {
    for (position, &fitness) in positions.iter().zip(fitnesses) {
        if fitness > leaders.alpha.fitness {
            leaders.delta = leaders.beta.clone();
            leaders.beta = leaders.alpha.clone();
            leaders.alpha = ScoredPosition {
                position: position.clone(),
                fitness,
            };
        } else if fitness > leaders.beta.fitness {
            leaders.delta = leaders.beta.clone();
            leaders.beta = ScoredPosition {
                position: position.clone(),
                fitness,
            };
        } else if fitness > leaders.delta.fitness {
            leaders.delta = ScoredPosition {
                position: position.clone(),
                fitness,
            };
        }
    }
}

/// Outcome of one solver run: the decoded best solution and the
/// best-so-far trace (length g_max + 1, non-decreasing).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub best: AssociationSolution,
    pub trace: Vec<f64>,
}

impl SolveOutcome {
    pub fn final_utility(&self) -> f64 {
        *self.trace.last().expect("trace is never empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GwoConfig {
    pub pop_size: usize,
    pub g_max: usize,
}

impl Default for GwoConfig {
    fn default() -> Self {
        Self {
            pop_size: 200,
            g_max: 150,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GwoError {
    /// Fewer than the three leaders plus one ω wolf.
    PopulationTooSmall { got: usize },
    ZeroGenerations,
    LengthMismatch { expected: usize, got: usize },
    Channel(crate::channel::ChannelError),
}

impl From<crate::channel::ChannelError> for GwoError {
    fn from(err: crate::channel::ChannelError) -> Self {
        Self::Channel(err)
    }
}

impl core::fmt::Display for GwoError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::PopulationTooSmall { got } => {
                write!(f, "population size must be at least 4, got {got}")
            }
            Self::ZeroGenerations => write!(f, "g_max must be at least 1"),
            Self::LengthMismatch { expected, got } => {
                write!(f, "leader has {got} dimensions, expected {expected}")
            }
            Self::Channel(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for GwoError {}

/// Runs GWO on one instance. Deterministic per seed; returns the decoded
/// best-ever solution and the best-so-far trace.
pub fn gwo_optimize(
    topology: &Topology,
    params: &LinkBudgetParams,
    config: &GwoConfig,
    seed: u64,
) -> Result<SolveOutcome, GwoError> {
    if config.g_max < 1 {
        return Err(GwoError::ZeroGenerations);
    }
    let problem = AssociationProblem::new(topology, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SwarmState::initialise(&problem, config.pop_size, &mut rng)?;
    for _ in 0..config.g_max {
        state.advance(&problem, config.g_max, &mut rng)?;
    }
    let best = problem
        .decode(&state.best.position)
        .expect("best position matches problem dimension");
    Ok(SolveOutcome {
        best,
        trace: state.trace,
    })
}

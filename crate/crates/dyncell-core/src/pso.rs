//! Global-best particle swarm baseline over the same encoding, for
//! budget-matched comparisons against the grey wolf solver.
//!
//! Velocity rule per particle and dimension, with fresh draws r1, r2:
//!
//! ```text
//! v' = ω·v + c1·r1·(pbest − x) + c2·r2·(gbest − x),   |v'| ≤ N_b/2
//! x' = clamp(x + v', 0, N_b)
//! ```
//!
//! Defaults use the constriction-equivalent ω = 0.7298,
//! c1 = c2 = 1.49618; personal and global bests update on strict
//! improvement, ties resolving to the lower particle index.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::association::{AssociationProblem, PositionVector, ScoredPosition};
use crate::channel::LinkBudgetParams;
use crate::gwo::SolveOutcome;
use crate::scenario::Topology;

/// Velocity-rule coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.7298,
            cognitive: 1.49618,
            social: 1.49618,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoConfig {
    pub pop_size: usize,
    pub g_max: usize,
    pub params: PsoParams,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            pop_size: 200,
            g_max: 150,
            params: PsoParams::default(),
        }
    }
}

/// One particle: position, velocity, and its personal best.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState {
    pub position: PositionVector,
    pub velocity: Vec<f64>,
    pub personal_best: ScoredPosition,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsoError {
    PopulationTooSmall { got: usize },
    ZeroGenerations,
    Channel(crate::channel::ChannelError),
}

impl From<crate::channel::ChannelError> for PsoError {
    fn from(err: crate::channel::ChannelError) -> Self {
        Self::Channel(err)
    }
}

impl core::fmt::Display for PsoError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::PopulationTooSmall { got } => {
                write!(f, "population size must be at least 2, got {got}")
            }
            Self::ZeroGenerations => write!(f, "g_max must be at least 1"),
            Self::Channel(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for PsoError {}

/// Working state of one PSO run.
#[derive(Debug, Clone)]
pub struct PsoState {
    particles: Vec<ParticleState>,
    global_best: ScoredPosition,
    generation: usize,
    trace: Vec<f64>,
}

impl PsoState {
    /// Positions uniform over [0, N_b]^N_ue, velocities zero, personal
    /// bests at the starting points.
    pub fn initialise<R: Rng>(
        problem: &AssociationProblem,
        pop_size: usize,
        rng: &mut R,
    ) -> Result<Self, PsoError> {
        if pop_size < 2 {
            return Err(PsoError::PopulationTooSmall { got: pop_size });
        }
        let n_bs = problem.n_bs() as f64;
        let particles: Vec<ParticleState> = (0..pop_size)
            .map(|_| {
                let values: Vec<f64> =
                    (0..problem.n_ue()).map(|_| rng.random::<f64>() * n_bs).collect();
                let position = PositionVector::new(values, problem.n_bs());
                let fitness = problem
                    .utility(&position)
                    .expect("population matches problem dimension");
                ParticleState {
                    velocity: alloc::vec![0.0; position.len()],
                    personal_best: ScoredPosition {
                        position: position.clone(),
                        fitness,
                    },
                    position,
                }
            })
            .collect();
        let global_best = particles
            .iter()
            .map(|p| &p.personal_best)
            .max_by(|a, b| a.fitness.total_cmp(&b.fitness))
            .expect("population is non-empty")
            .clone();
        let trace = alloc::vec![global_best.fitness];
        Ok(Self {
            particles,
            global_best,
            generation: 0,
            trace,
        })
    }

    /// One synchronous generation: all particles move against the
    /// generation-start global best, then bests update.
    pub fn advance<R: Rng>(&mut self, problem: &AssociationProblem, params: &PsoParams, rng: &mut R) {
        let n_bs = problem.n_bs();
        let upper = n_bs as f64;
        let v_max = upper / 2.0;
        let gbest = self.global_best.clone();
        for particle in &mut self.particles {
            let dims = particle.position.len();
            let mut values = Vec::with_capacity(dims);
            for n in 0..dims {
                let x = particle.position.values()[n];
                let r1 = rng.random::<f64>();
                let r2 = rng.random::<f64>();
                let mut v = params.inertia * particle.velocity[n]
                    + params.cognitive * r1 * (particle.personal_best.position.values()[n] - x)
                    + params.social * r2 * (gbest.position.values()[n] - x);
                v = v.clamp(-v_max, v_max);
                particle.velocity[n] = v;
                values.push(x + v);
            }
            particle.position = PositionVector::new(values, n_bs);
            let fitness = problem
                .utility(&particle.position)
                .expect("population matches problem dimension");
            if fitness > particle.personal_best.fitness {
                particle.personal_best = ScoredPosition {
                    position: particle.position.clone(),
                    fitness,
                };
            }
        }
        for particle in &self.particles {
            if particle.personal_best.fitness > self.global_best.fitness {
                self.global_best = particle.personal_best.clone();
            }
        }
        self.generation += 1;
        self.trace.push(self.global_best.fitness);
    }

    pub fn particles(&self) -> &[ParticleState] {
        &self.particles
    }

    pub fn global_best(&self) -> &ScoredPosition {
        &self.global_best
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn trace(&self) -> &[f64] {
        &self.trace
    }
}

/// Runs PSO on one instance with default coefficients.
pub fn pso_optimize(
    topology: &Topology,
    params: &LinkBudgetParams,
    config: &PsoConfig,
    seed: u64,
) -> Result<SolveOutcome, PsoError> {
    if config.g_max < 1 {
        return Err(PsoError::ZeroGenerations);
    }
    let problem = AssociationProblem::new(topology, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = PsoState::initialise(&problem, config.pop_size, &mut rng)?;
    for _ in 0..config.g_max {
        state.advance(&problem, &config.params, &mut rng);
    }
    let best = problem
        .decode(&state.global_best.position)
        .expect("best position matches problem dimension");
    Ok(SolveOutcome {
        best,
        trace: state.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::association::RateMatrix;
    use crate::scenario::{generate_topology, TopologyConfig};
    use alloc::vec;

    fn small_instance() -> (Topology, LinkBudgetParams) {
        let config = TopologyConfig {
            n_bs: 2,
            n_ue: 5,
            radius_m: 20.0,
            ..TopologyConfig::default()
        };
        (generate_topology(&config, 12).unwrap(), LinkBudgetParams::default())
    }

    #[test]
    fn finds_single_feasible_association() {
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![10.0e9]]),
            vec![4.0e9],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut state = PsoState::initialise(&problem, 6, &mut rng).unwrap();
        for _ in 0..10 {
            state.advance(&problem, &PsoParams::default(), &mut rng);
        }
        assert!((state.global_best().fitness - 4.0e9).abs() < 1e-3);
    }

    #[test]
    fn zero_coefficients_freeze_the_swarm() {
        let (topology, params) = small_instance();
        let problem = AssociationProblem::new(&topology, &params).unwrap();
        let frozen = PsoParams {
            inertia: 0.0,
            cognitive: 0.0,
            social: 0.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut state = PsoState::initialise(&problem, 10, &mut rng).unwrap();
        let initial: Vec<_> = state.particles().iter().map(|p| p.position.clone()).collect();
        let first = state.trace()[0];
        for _ in 0..15 {
            state.advance(&problem, &frozen, &mut rng);
        }
        for (p, start) in state.particles().iter().zip(&initial) {
            assert_eq!(&p.position, start);
        }
        assert!(state.trace().iter().all(|&f| f == first));
    }

    #[test]
    fn velocity_stays_clamped() {
        let (topology, params) = small_instance();
        let problem = AssociationProblem::new(&topology, &params).unwrap();
        let v_max = problem.n_bs() as f64 / 2.0;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = PsoState::initialise(&problem, 12, &mut rng).unwrap();
        for _ in 0..30 {
            state.advance(&problem, &PsoParams::default(), &mut rng);
            for particle in state.particles() {
                assert!(particle.velocity.iter().all(|v| v.abs() <= v_max));
                assert!(particle
                    .position
                    .values()
                    .iter()
                    .all(|&x| (0.0..=problem.n_bs() as f64).contains(&x)));
            }
        }
    }

    #[test]
    fn optimize_is_deterministic_and_monotone() {
        let (topology, params) = small_instance();
        let config = PsoConfig {
            pop_size: 10,
            g_max: 25,
            params: PsoParams::default(),
        };
        let a = pso_optimize(&topology, &params, &config, 77).unwrap();
        let b = pso_optimize(&topology, &params, &config, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trace.len(), 26);
        assert!(a.trace.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn rejects_bad_sizes() {
        let (topology, params) = small_instance();
        let bad_pop = PsoConfig {
            pop_size: 1,
            g_max: 5,
            params: PsoParams::default(),
        };
        assert!(matches!(
            pso_optimize(&topology, &params, &bad_pop, 0),
            Err(PsoError::PopulationTooSmall { got: 1 })
        ));
        let bad_gen = PsoConfig {
            pop_size: 4,
            g_max: 0,
            params: PsoParams::default(),
        };
        assert!(matches!(
            pso_optimize(&topology, &params, &bad_gen, 0),
            Err(PsoError::ZeroGenerations)
        ));
    }
}

//! Dynamic-cell user association for ultra-dense THz networks.
//!
//! The crate models a set of base stations serving user equipments under a
//! THz link budget (free-space plus molecular-absorption loss), poses user
//! association as constrained utility maximisation over a binary
//! association matrix and per-BS resource fractions, and solves it with a
//! grey wolf optimizer, a particle swarm baseline, and an exhaustive
//! oracle for small instances. A slot-level simulator covers the
//! beacon-interval initial-access procedure.
//!
//! Everything is deterministic given explicit seeds, `no_std`-compatible
//! (`alloc` required), and free of global state: topologies, link
//! parameters, and problems are immutable once built, so populations can
//! be evaluated concurrently.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod math;

pub mod association;
pub mod channel;
pub mod gwo;
pub mod macsim;
pub mod pso;
pub mod scenario;

pub use association::{
    check_constraints, decode, evaluate_objective, exhaustive_search, AssociationProblem,
    AssociationSolution, ConstraintReport, ConstraintViolation, PositionVector, RateMatrix,
    ScoredPosition,
};
pub use channel::{achievable_rate, fspl_db, mal_db, LinkBudgetParams};
pub use gwo::{control_schedule, gwo_optimize, wolf_update, GwoConfig, SolveOutcome, SwarmState};
pub use macsim::{simulate_abft, simulate_initial_access, BeaconIntervalConfig};
pub use pso::{pso_optimize, PsoConfig, PsoParams};
pub use scenario::{
    generate_topology, load_scenario_preset, BaseStation, BsPlacement, ScenarioPreset, Topology,
    TopologyConfig, UserEquipment,
};

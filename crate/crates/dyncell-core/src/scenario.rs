//! Network instances: node types, seeded topology generation, and the
//! technical-scenario presets used as configuration defaults.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math;

pub const TAU: f64 = core::f64::consts::TAU;

/// 2-D point, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance_to(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        math::sqrt(dx * dx + dy * dy)
    }

    fn norm(&self) -> f64 {
        let origin = Point { x: 0.0, y: 0.0 };
        self.distance_to(&origin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation {
    pub id: usize,
    pub position: Point,
    /// Boresight angle φ in [0, 2π). Unused under perfect beam alignment
    /// but kept so the boresight range constraints stay representable.
    pub boresight_rad: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserEquipment {
    pub id: usize,
    pub position: Point,
    pub boresight_rad: f64,
    /// Minimum required rate, bit/s. Strictly positive.
    pub min_rate_bps: f64,
}

/// An immutable network instance: the node sets being optimized.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    base_stations: Vec<BaseStation>,
    users: Vec<UserEquipment>,
    deployment_radius_m: f64,
}

impl Topology {
    /// Validates ids, boresight ranges, demands, and that every position
    /// lies within the deployment disk.
    pub fn new(
        base_stations: Vec<BaseStation>,
        users: Vec<UserEquipment>,
        deployment_radius_m: f64,
    ) -> Result<Self, ScenarioError> {
        if base_stations.is_empty() {
            return Err(ScenarioError::NoBaseStations);
        }
        if users.is_empty() {
            return Err(ScenarioError::NoUsers);
        }
        if !(deployment_radius_m.is_finite() && deployment_radius_m > 0.0) {
            return Err(ScenarioError::InvalidRadius(deployment_radius_m));
        }
        // A touch of slack keeps boundary points sampled or computed at
        // exactly the radius valid.
        let limit = deployment_radius_m * (1.0 + 1e-12);
        for (idx, bs) in base_stations.iter().enumerate() {
            if bs.id != idx {
                return Err(ScenarioError::NonContiguousIds);
            }
            if !(0.0..TAU).contains(&bs.boresight_rad) {
                return Err(ScenarioError::BoresightOutOfRange(bs.boresight_rad));
            }
            if bs.position.norm() > limit {
                return Err(ScenarioError::PositionOutsideDisk);
            }
        }
        for (idx, ue) in users.iter().enumerate() {
            if ue.id != idx {
                return Err(ScenarioError::NonContiguousIds);
            }
            if !(0.0..TAU).contains(&ue.boresight_rad) {
                return Err(ScenarioError::BoresightOutOfRange(ue.boresight_rad));
            }
            if !(ue.min_rate_bps.is_finite() && ue.min_rate_bps > 0.0) {
                return Err(ScenarioError::NonPositiveDemand(ue.min_rate_bps));
            }
            if ue.position.norm() > limit {
                return Err(ScenarioError::PositionOutsideDisk);
            }
        }
        Ok(Self {
            base_stations,
            users,
            deployment_radius_m,
        })
    }

    pub fn base_stations(&self) -> &[BaseStation] {
        &self.base_stations
    }

    pub fn users(&self) -> &[UserEquipment] {
        &self.users
    }

    pub fn n_bs(&self) -> usize {
        self.base_stations.len()
    }

    pub fn n_ue(&self) -> usize {
        self.users.len()
    }

    pub fn deployment_radius_m(&self) -> f64 {
        self.deployment_radius_m
    }

    /// Distance between BS `i` and UE `j`, metres.
    pub fn distance(&self, bs: usize, ue: usize) -> f64 {
        self.base_stations[bs]
            .position
            .distance_to(&self.users[ue].position)
    }
}

/// How base stations are placed inside the deployment disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BsPlacement {
    /// Same area-uniform draw as the users.
    #[default]
    UniformDisk,
    /// Deterministic square grid spanning the disk's inscribed square.
    Grid,
}

/// Parameters for [`generate_topology`]. Defaults follow the dense indoor
/// experiment: 6 BSs serving 120 UEs in a 50 m disk with demands drawn
/// uniformly from [1, 10] Gbps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyConfig {
    pub n_bs: usize,
    pub n_ue: usize,
    pub radius_m: f64,
    pub demand_min_bps: f64,
    pub demand_max_bps: f64,
    pub bs_placement: BsPlacement,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        Self {
            n_bs: 6,
            n_ue: 120,
            radius_m: 50.0,
            demand_min_bps: 1.0e9,
            demand_max_bps: 10.0e9,
            bs_placement: BsPlacement::UniformDisk,
        }
    }
}

impl TopologyConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.n_bs == 0 {
            return Err(ScenarioError::NoBaseStations);
        }
        if self.n_ue == 0 {
            return Err(ScenarioError::NoUsers);
        }
        if !(self.radius_m.is_finite() && self.radius_m > 0.0) {
            return Err(ScenarioError::InvalidRadius(self.radius_m));
        }
        if !(self.demand_min_bps.is_finite()
            && self.demand_max_bps.is_finite()
            && self.demand_min_bps > 0.0
            && self.demand_min_bps <= self.demand_max_bps)
        {
            return Err(ScenarioError::InvalidDemandRange {
                min_bps: self.demand_min_bps,
                max_bps: self.demand_max_bps,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioError {
    NoBaseStations,
    NoUsers,
    InvalidRadius(f64),
    InvalidDemandRange { min_bps: f64, max_bps: f64 },
    NonPositiveDemand(f64),
    BoresightOutOfRange(f64),
    PositionOutsideDisk,
    NonContiguousIds,
    UnknownPreset(u8),
}

impl core::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::NoBaseStations => write!(f, "topology needs at least one base station"),
            Self::NoUsers => write!(f, "topology needs at least one user"),
            Self::InvalidRadius(r) => write!(f, "deployment radius must be positive, got {r}"),
            Self::InvalidDemandRange { min_bps, max_bps } => write!(
                f,
                "demand range must satisfy 0 < min <= max, got [{min_bps}, {max_bps}]"
            ),
            Self::NonPositiveDemand(d) => write!(f, "user demand must be positive, got {d}"),
            Self::BoresightOutOfRange(b) => {
                write!(f, "boresight angle must lie in [0, 2*pi), got {b}")
            }
            Self::PositionOutsideDisk => write!(f, "node position outside the deployment disk"),
            Self::NonContiguousIds => write!(f, "node ids must be contiguous from zero"),
            Self::UnknownPreset(id) => write!(f, "unknown scenario preset {id}, expected 1..=3"),
        }
    }
}

impl core::error::Error for ScenarioError {}

/// Generates a topology deterministically from `seed`.
///
/// Positions are area-uniform over the disk (radius drawn as `R·sqrt(u)`),
/// demands uniform over the configured interval. Draw order is fixed: all
/// base stations first (position, then boresight), then users (position,
/// boresight, demand).
pub fn generate_topology(config: &TopologyConfig, seed: u64) -> Result<Topology, ScenarioError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let base_stations = match config.bs_placement {
        BsPlacement::UniformDisk => (0..config.n_bs)
            .map(|id| BaseStation {
                id,
                position: sample_disk(&mut rng, config.radius_m),
                boresight_rad: rng.random::<f64>() * TAU,
            })
            .collect(),
        BsPlacement::Grid => grid_positions(config.n_bs, config.radius_m)
            .into_iter()
            .enumerate()
            .map(|(id, position)| BaseStation {
                id,
                position,
                boresight_rad: rng.random::<f64>() * TAU,
            })
            .collect(),
    };

    let demand_span = config.demand_max_bps - config.demand_min_bps;
    let users = (0..config.n_ue)
        .map(|id| UserEquipment {
            id,
            position: sample_disk(&mut rng, config.radius_m),
            boresight_rad: rng.random::<f64>() * TAU,
            min_rate_bps: config.demand_min_bps + demand_span * rng.random::<f64>(),
        })
        .collect();

    Topology::new(base_stations, users, config.radius_m)
}

fn sample_disk(rng: &mut ChaCha8Rng, radius: f64) -> Point {
    let r = radius * math::sqrt(rng.random::<f64>());
    let angle = rng.random::<f64>() * TAU;
    Point {
        x: r * math::cos(angle),
        y: r * math::sin(angle),
    }
}

/// First `n` points of a square grid spanning the disk's inscribed square,
/// row-major. A single point degenerates to the origin.
fn grid_positions(n: usize, radius: f64) -> Vec<Point> {
    let side = {
        let mut s = 1usize;
        while s * s < n {
            s += 1;
        }
        s
    };
    let half = radius / core::f64::consts::SQRT_2;
    let coord = |i: usize| {
        if side == 1 {
            0.0
        } else {
            -half + 2.0 * half * i as f64 / (side - 1) as f64
        }
    };
    (0..n)
        .map(|k| Point {
            x: coord(k % side),
            y: coord(k / side),
        })
        .collect()
}

/// One row of the technical-scenario KPI table, usable as configuration
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPreset {
    pub scenario_id: u8,
    pub max_link_range_m: f64,
    pub connections_per_node: u32,
    pub per_link_throughput_gbps: f64,
    /// `per_link_throughput_gbps × connections_per_node`.
    pub aggregate_throughput_gbps: f64,
    pub max_latency_ms: f64,
}

/// KPI presets: 1 = long-range point-to-point, 2 = point-to-multipoint,
/// 3 = indoor quasi-directional.
pub fn load_scenario_preset(scenario_id: u8) -> Result<ScenarioPreset, ScenarioError> {
    let (range, connections, per_link) = match scenario_id {
        1 => (1000.0, 1, 1000.0),
        2 => (500.0, 10, 100.0),
        3 => (10.0, 100, 10.0),
        other => return Err(ScenarioError::UnknownPreset(other)),
    };
    Ok(ScenarioPreset {
        scenario_id,
        max_link_range_m: range,
        connections_per_node: connections,
        per_link_throughput_gbps: per_link,
        aggregate_throughput_gbps: per_link * connections as f64,
        max_latency_ms: 1.0,
    })
}

impl ScenarioPreset {
    /// Maps the KPI row onto topology defaults: the deployment disk is
    /// sized so the worst-case link equals the scenario's range, users are
    /// `connections_per_node` per BS, and demands are pinned to the
    /// per-link throughput.
    pub fn apply_to(&self, config: &mut TopologyConfig) {
        config.radius_m = self.max_link_range_m / 2.0;
        config.n_ue = config.n_bs * self.connections_per_node as usize;
        config.demand_min_bps = self.per_link_throughput_gbps * 1e9;
        config.demand_max_bps = self.per_link_throughput_gbps * 1e9;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_shape_instance() {
        let config = TopologyConfig::default();
        let topo = generate_topology(&config, 42).unwrap();
        assert_eq!(topo.n_bs(), 6);
        assert_eq!(topo.n_ue(), 120);
        for ue in topo.users() {
            assert!(ue.min_rate_bps >= 1.0e9 && ue.min_rate_bps <= 10.0e9);
            assert!(ue.position.norm() <= 50.0);
        }
        for bs in topo.base_stations() {
            assert!(bs.position.norm() <= 50.0);
            assert!((0.0..TAU).contains(&bs.boresight_rad));
        }
    }

    #[test]
    fn degenerate_demand_interval() {
        let config = TopologyConfig {
            n_bs: 1,
            n_ue: 1,
            radius_m: 5.0,
            demand_min_bps: 3.0e9,
            demand_max_bps: 3.0e9,
            ..TopologyConfig::default()
        };
        for seed in [0, 1, 99] {
            let topo = generate_topology(&config, seed).unwrap();
            assert_eq!(topo.users()[0].min_rate_bps, 3.0e9);
        }
    }

    #[test]
    fn seed_determinism() {
        let config = TopologyConfig::default();
        let a = generate_topology(&config, 7).unwrap();
        let b = generate_topology(&config, 7).unwrap();
        assert_eq!(a, b);
        let c = generate_topology(&config, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn disk_sampling_is_area_uniform() {
        // Area law: a quarter of the points fall inside half the radius.
        let config = TopologyConfig {
            n_bs: 1,
            n_ue: 100_000,
            radius_m: 20.0,
            ..TopologyConfig::default()
        };
        let topo = generate_topology(&config, 5).unwrap();
        let inner = topo
            .users()
            .iter()
            .filter(|ue| ue.position.norm() <= 10.0)
            .count();
        let fraction = inner as f64 / 100_000.0;
        assert!((fraction - 0.25).abs() <= 0.01, "fraction = {fraction}");
    }

    #[test]
    fn grid_placement_stays_in_disk() {
        let config = TopologyConfig {
            n_bs: 7,
            n_ue: 3,
            radius_m: 30.0,
            bs_placement: BsPlacement::Grid,
            ..TopologyConfig::default()
        };
        let topo = generate_topology(&config, 0).unwrap();
        assert_eq!(topo.n_bs(), 7);
        for bs in topo.base_stations() {
            assert!(bs.position.norm() <= 30.0 * (1.0 + 1e-12));
        }
        // Grid is deterministic: another seed moves users but not BSs.
        let other = generate_topology(&config, 9).unwrap();
        for (a, b) in topo.base_stations().iter().zip(other.base_stations()) {
            assert_eq!(a.position, b.position);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let no_bs = TopologyConfig {
            n_bs: 0,
            ..TopologyConfig::default()
        };
        assert!(matches!(
            generate_topology(&no_bs, 0),
            Err(ScenarioError::NoBaseStations)
        ));
        let flat = TopologyConfig {
            radius_m: 0.0,
            ..TopologyConfig::default()
        };
        assert!(matches!(
            generate_topology(&flat, 0),
            Err(ScenarioError::InvalidRadius(_))
        ));
        let inverted = TopologyConfig {
            demand_min_bps: 5.0e9,
            demand_max_bps: 2.0e9,
            ..TopologyConfig::default()
        };
        assert!(matches!(
            generate_topology(&inverted, 0),
            Err(ScenarioError::InvalidDemandRange { .. })
        ));
        let zero_demand = TopologyConfig {
            demand_min_bps: 0.0,
            ..TopologyConfig::default()
        };
        assert!(generate_topology(&zero_demand, 0).is_err());
    }

    #[test]
    fn preset_rows() {
        let p1 = load_scenario_preset(1).unwrap();
        assert_eq!(p1.max_link_range_m, 1000.0);
        assert_eq!(p1.connections_per_node, 1);
        assert_eq!(p1.aggregate_throughput_gbps, 1000.0);

        let p2 = load_scenario_preset(2).unwrap();
        assert_eq!(p2.max_link_range_m, 500.0);
        assert_eq!(p2.connections_per_node, 10);
        assert_eq!(p2.per_link_throughput_gbps, 100.0);
        assert_eq!(p2.aggregate_throughput_gbps, 1000.0);

        let p3 = load_scenario_preset(3).unwrap();
        assert_eq!(p3.max_link_range_m, 10.0);
        assert_eq!(p3.connections_per_node, 100);
        assert_eq!(p3.aggregate_throughput_gbps, 1000.0);

        assert!(matches!(
            load_scenario_preset(4),
            Err(ScenarioError::UnknownPreset(4))
        ));
    }

    #[test]
    fn preset_applies_to_config() {
        let mut config = TopologyConfig::default();
        load_scenario_preset(2).unwrap().apply_to(&mut config);
        assert_eq!(config.radius_m, 250.0);
        assert_eq!(config.n_ue, 60);
        assert_eq!(config.demand_min_bps, 100.0e9);
        assert_eq!(config.demand_max_bps, 100.0e9);
    }
}

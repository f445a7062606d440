//! Flat dotted-key configuration files.
//!
//! One `key = value` pair per line, `#` starts a comment, unknown keys are
//! rejected by name. Every key has a default, so an empty file is valid;
//! the defaults reproduce the dense indoor experiment (6 BSs, 120 UEs,
//! 50 m disk, Θ = 120 dB, B = 1 GHz, population 200, 150 generations,
//! 20 topologies, both solvers).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use dyncell_core::channel::LinkBudgetParams;
use dyncell_core::macsim::BeaconIntervalConfig;
use dyncell_core::pso::PsoParams;
use dyncell_core::scenario::{BsPlacement, TopologyConfig};

use crate::harness::{Algorithm, ExperimentConfig};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for config key `{key}`: expected {expected}")]
    InvalidValue {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("duplicate config key `{0}`")]
    DuplicateKey(String),
    #[error("malformed config line {line}: `{text}` (expected `key = value`)")]
    MalformedLine { line: usize, text: String },
    #[error("missing required config key `{0}`")]
    MissingKey(&'static str),
}

/// Parsed but untyped key-value pairs.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::MalformedLine {
                    line: idx + 1,
                    text: raw_line.trim().to_string(),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if entries.insert(key.clone(), value).is_some() {
                return Err(ConfigError::DuplicateKey(key));
            }
        }
        Ok(Self { entries })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Fully-typed configuration for every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct AppConfig {
    pub topology: TopologyConfig,
    /// Optional pre-generated topology document for `solve`.
    pub topology_file: Option<PathBuf>,
    pub channel: LinkBudgetParams,
    pub pop_size: usize,
    pub g_max: usize,
    pub pso: PsoParams,
    pub num_topologies: usize,
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub jobs: Option<usize>,
    pub beacon_interval: BeaconIntervalConfig,
    pub macsim_stations: usize,
    pub macsim_max_bi: usize,
    pub sweep_ue_counts: Vec<usize>,
}

impl Default for AppConfig {
    fn default() -> Self {
        Self {
            topology: TopologyConfig::default(),
            topology_file: None,
            channel: LinkBudgetParams::default(),
            pop_size: 200,
            g_max: 150,
            pso: PsoParams::default(),
            num_topologies: 20,
            base_seed: 1,
            algorithms: vec![Algorithm::Gwo, Algorithm::Pso],
            jobs: None,
            beacon_interval: BeaconIntervalConfig::default(),
            macsim_stations: 16,
            macsim_max_bi: 100,
            sweep_ue_counts: Vec::new(),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str, expected: &'static str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
        expected,
    })
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    parse_value(key, value, "a number")
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigError> {
    parse_value(key, value, "a non-negative integer")
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    parse_value(key, value, "true or false")
}

fn parse_algorithms(key: &str, value: &str) -> Result<Vec<Algorithm>, ConfigError> {
    if value.eq_ignore_ascii_case("both") {
        return Ok(vec![Algorithm::Gwo, Algorithm::Pso]);
    }
    let mut algorithms = Vec::new();
    for part in value.split(',') {
        let algo = part.trim().parse().map_err(|_| ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
            expected: "a comma-separated subset of gwo,pso or `both`",
        })?;
        if !algorithms.contains(&algo) {
            algorithms.push(algo);
        }
    }
    if algorithms.is_empty() {
        return Err(ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
            expected: "at least one algorithm",
        });
    }
    Ok(algorithms)
}

fn parse_counts(key: &str, value: &str) -> Result<Vec<usize>, ConfigError> {
    value
        .split(',')
        .map(|part| parse_usize(key, part.trim()))
        .collect()
}

impl AppConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let mut config = Self::default();
        for (key, value) in &raw.entries {
            match key.as_str() {
                "topology.n_bs" => config.topology.n_bs = parse_usize(key, value)?,
                "topology.n_ue" => config.topology.n_ue = parse_usize(key, value)?,
                "topology.radius_m" => config.topology.radius_m = parse_f64(key, value)?,
                "topology.demand_min_bps" => {
                    config.topology.demand_min_bps = parse_f64(key, value)?
                }
                "topology.demand_max_bps" => {
                    config.topology.demand_max_bps = parse_f64(key, value)?
                }
                "topology.bs_placement" => {
                    config.topology.bs_placement = match value.to_ascii_lowercase().as_str() {
                        "uniform" => BsPlacement::UniformDisk,
                        "grid" => BsPlacement::Grid,
                        _ => {
                            return Err(ConfigError::InvalidValue {
                                key: key.clone(),
                                value: value.clone(),
                                expected: "`uniform` or `grid`",
                            })
                        }
                    }
                }
                "topology.file" => config.topology_file = Some(PathBuf::from(value)),
                "channel.carrier_frequency_hz" => {
                    config.channel.carrier_frequency_hz = parse_f64(key, value)?
                }
                "channel.bandwidth_hz" => config.channel.bandwidth_hz = parse_f64(key, value)?,
                "channel.theta_db" => config.channel.theta_db = parse_f64(key, value)?,
                "channel.absorption_coeff_per_m" => {
                    config.channel.absorption_coeff_per_m = parse_f64(key, value)?
                }
                "channel.min_distance_m" => {
                    config.channel.min_distance_m = parse_f64(key, value)?
                }
                "solver.pop_size" => config.pop_size = parse_usize(key, value)?,
                "solver.g_max" => config.g_max = parse_usize(key, value)?,
                "solver.pso.inertia" => config.pso.inertia = parse_f64(key, value)?,
                "solver.pso.cognitive" => config.pso.cognitive = parse_f64(key, value)?,
                "solver.pso.social" => config.pso.social = parse_f64(key, value)?,
                "run.num_topologies" => config.num_topologies = parse_usize(key, value)?,
                "run.base_seed" => config.base_seed = parse_value(key, value, "a u64 seed")?,
                "run.algorithms" => config.algorithms = parse_algorithms(key, value)?,
                "run.jobs" => config.jobs = Some(parse_usize(key, value)?),
                "macsim.num_sectors" => {
                    config.beacon_interval.num_sectors = parse_usize(key, value)?
                }
                "macsim.num_abft_slots" => {
                    config.beacon_interval.num_abft_slots = parse_usize(key, value)?
                }
                "macsim.ati_present" => {
                    config.beacon_interval.ati_present = parse_bool(key, value)?
                }
                "macsim.max_backoff_bi" => {
                    config.beacon_interval.max_backoff_bi = parse_usize(key, value)?
                }
                "macsim.num_stations" => config.macsim_stations = parse_usize(key, value)?,
                "macsim.max_bi" => config.macsim_max_bi = parse_usize(key, value)?,
                "sweep.ue_counts" => config.sweep_ue_counts = parse_counts(key, value)?,
                _ => return Err(ConfigError::UnknownKey(key.clone())),
            }
        }
        Ok(config)
    }

    pub fn experiment(&self) -> ExperimentConfig {
        ExperimentConfig {
            topology: self.topology,
            channel: self.channel,
            pop_size: self.pop_size,
            g_max: self.g_max,
            pso: self.pso,
            num_topologies: self.num_topologies,
            base_seed: self.base_seed,
            algorithms: self.algorithms.clone(),
        }
    }

    /// Deterministic dump of every effective value, used for hashing.
    pub fn canonical_string(&self) -> String {
        let mut out = String::new();
        let algorithms = self
            .algorithms
            .iter()
            .map(Algorithm::tag)
            .collect::<Vec<_>>()
            .join(",");
        let counts = self
            .sweep_ue_counts
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let placement = match self.topology.bs_placement {
            BsPlacement::UniformDisk => "uniform",
            BsPlacement::Grid => "grid",
        };
        let _ = write!(
            out,
            "channel.absorption_coeff_per_m={}\n\
             channel.bandwidth_hz={}\n\
             channel.carrier_frequency_hz={}\n\
             channel.min_distance_m={}\n\
             channel.theta_db={}\n\
             macsim.ati_present={}\n\
             macsim.max_backoff_bi={}\n\
             macsim.max_bi={}\n\
             macsim.num_abft_slots={}\n\
             macsim.num_sectors={}\n\
             macsim.num_stations={}\n\
             run.algorithms={}\n\
             run.base_seed={}\n\
             run.num_topologies={}\n\
             solver.g_max={}\n\
             solver.pop_size={}\n\
             solver.pso.cognitive={}\n\
             solver.pso.inertia={}\n\
             solver.pso.social={}\n\
             sweep.ue_counts={}\n\
             topology.bs_placement={}\n\
             topology.demand_max_bps={}\n\
             topology.demand_min_bps={}\n\
             topology.file={}\n\
             topology.n_bs={}\n\
             topology.n_ue={}\n\
             topology.radius_m={}\n",
            self.channel.absorption_coeff_per_m,
            self.channel.bandwidth_hz,
            self.channel.carrier_frequency_hz,
            self.channel.min_distance_m,
            self.channel.theta_db,
            self.beacon_interval.ati_present,
            self.beacon_interval.max_backoff_bi,
            self.macsim_max_bi,
            self.beacon_interval.num_abft_slots,
            self.beacon_interval.num_sectors,
            self.macsim_stations,
            algorithms,
            self.base_seed,
            self.num_topologies,
            self.g_max,
            self.pop_size,
            self.pso.cognitive,
            self.pso.inertia,
            self.pso.social,
            counts,
            placement,
            self.topology.demand_max_bps,
            self.topology.demand_min_bps,
            self.topology_file
                .as_deref()
                .map(|p| p.display().to_string())
                .unwrap_or_default(),
            self.topology.n_bs,
            self.topology.n_ue,
            self.topology.radius_m,
        );
        out
    }

    /// FNV-1a over the canonical dump.
    pub fn config_hash(&self) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in self.canonical_string().bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }
}

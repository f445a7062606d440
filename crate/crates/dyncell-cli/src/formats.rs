//! JSON documents for topologies and solutions.
//!
//! Topology schema: `{radius_m, base_stations: [{id, x, y, boresight}],
//! users: [{id, x, y, boresight, min_rate_bps}]}` plus an optional `meta`
//! provenance block written by the CLI and ignored on load.

use std::fs;
use std::path::Path;

use dyncell_core::association::AssociationSolution;
use dyncell_core::scenario::{BaseStation, Point, ScenarioError, Topology, UserEquipment};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub config_hash: String,
    pub seed: u64,
}

impl Meta {
    pub fn new(config_hash: u64, seed: u64) -> Self {
        Self {
            tool: format!("dyncell {}", env!("CARGO_PKG_VERSION")),
            config_hash: format!("{config_hash:016x}"),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaseStationDoc {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub boresight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UserDoc {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub boresight: f64,
    pub min_rate_bps: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub radius_m: f64,
    pub base_stations: Vec<BaseStationDoc>,
    pub users: Vec<UserDoc>,
}

impl TopologyDoc {
    pub fn from_topology(topology: &Topology, meta: Option<Meta>) -> Self {
        Self {
            meta,
            radius_m: topology.deployment_radius_m(),
            base_stations: topology
                .base_stations()
                .iter()
                .map(|bs| BaseStationDoc {
                    id: bs.id,
                    x: bs.position.x,
                    y: bs.position.y,
                    boresight: bs.boresight_rad,
                })
                .collect(),
            users: topology
                .users()
                .iter()
                .map(|ue| UserDoc {
                    id: ue.id,
                    x: ue.position.x,
                    y: ue.position.y,
                    boresight: ue.boresight_rad,
                    min_rate_bps: ue.min_rate_bps,
                })
                .collect(),
        }
    }

    /// Validates through the core constructor.
    pub fn into_topology(self) -> Result<Topology, ScenarioError> {
        let base_stations = self
            .base_stations
            .into_iter()
            .map(|doc| BaseStation {
                id: doc.id,
                position: Point { x: doc.x, y: doc.y },
                boresight_rad: doc.boresight,
            })
            .collect();
        let users = self
            .users
            .into_iter()
            .map(|doc| UserEquipment {
                id: doc.id,
                position: Point { x: doc.x, y: doc.y },
                boresight_rad: doc.boresight,
                min_rate_bps: doc.min_rate_bps,
            })
            .collect();
        Topology::new(base_stations, users, self.radius_m)
    }
}

/// Per-UE association row; unserved UEs carry nulls.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub ue_id: usize,
    pub bs_id: Option<usize>,
    pub fraction: f64,
    pub rate_bps: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub utility_bps: f64,
    pub served_fraction: f64,
    pub assignments: Vec<AssignmentDoc>,
}

impl SolutionDoc {
    pub fn from_solution(solution: &AssociationSolution, meta: Option<Meta>) -> Self {
        let assignments = (0..solution.n_ue())
            .map(|ue| match solution.serving_bs(ue) {
                Some(bs) => AssignmentDoc {
                    ue_id: ue,
                    bs_id: Some(bs),
                    fraction: solution.fraction(bs, ue),
                    rate_bps: Some(solution.rate(bs, ue)),
                },
                None => AssignmentDoc {
                    ue_id: ue,
                    bs_id: None,
                    fraction: 0.0,
                    rate_bps: None,
                },
            })
            .collect();
        Self {
            meta,
            utility_bps: solution.utility(),
            served_fraction: solution.served_fraction(),
            assignments,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

pub fn save_topology(path: &Path, topology: &Topology, meta: Option<Meta>) -> Result<(), FormatError> {
    let doc = TopologyDoc::from_topology(topology, meta);
    write_json(path, &doc)
}

pub fn load_topology(path: &Path) -> Result<Topology, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc: TopologyDoc = serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.display().to_string(),
        source,
    })?;
    Ok(doc.into_topology()?)
}

pub fn save_solution(
    path: &Path,
    solution: &AssociationSolution,
    meta: Option<Meta>,
) -> Result<(), FormatError> {
    let doc = SolutionDoc::from_solution(solution, meta);
    write_json(path, &doc)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let text = serde_json::to_string_pretty(value).map_err(|source| FormatError::Json {
        path: path.display().to_string(),
        source,
    })?;
    fs::write(path, text + "\n").map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

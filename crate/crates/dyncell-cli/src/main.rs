//! `dyncell` — generate THz network topologies, solve the user-association
//! problem with GWO/PSO, run batch comparisons and scaling sweeps, and
//! simulate beacon-interval initial access.
//!
//! Exit status: 0 on success, 1 on configuration or parameter errors
//! (the message names the offending key), 2 on i/o errors.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dyncell_cli::config::{AppConfig, ConfigError, RawConfig};
use dyncell_cli::formats::{self, FormatError, Meta};
use dyncell_cli::harness::{self, Algorithm, HarnessError, SingleRun};
use dyncell_cli::report::{self, Provenance};
use dyncell_core::macsim::{simulate_initial_access, MacSimError};
use dyncell_core::scenario::{generate_topology, load_scenario_preset, ScenarioError, Topology};

#[derive(Parser)]
#[command(
    name = "dyncell",
    version,
    about = "Dynamic-cell user association experiments for dense THz networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key=value config file; flags override file values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory (created if missing).
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Base seed override; all randomness flows from this one value.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Algorithm selection override.
    #[arg(long, global = true, value_enum)]
    algo: Option<AlgoArg>,

    /// Bound on concurrent solver runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Apply a technical-scenario KPI preset (1, 2, or 3) on top of the
    /// config file.
    #[arg(long, global = true)]
    scenario: Option<u8>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a topology document.
    Generate,
    /// Solve one instance with a single algorithm.
    Solve,
    /// Run every algorithm over independent topologies and export CSVs.
    Batch,
    /// Average utility and served fraction across a range of UE counts.
    Sweep,
    /// Simulate beacon-interval initial access.
    Macsim,
    /// Print a technical-scenario KPI row.
    Presets,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Gwo,
    Pso,
    Both,
}

impl AlgoArg {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            Self::Gwo => vec![Algorithm::Gwo],
            Self::Pso => vec![Algorithm::Pso],
            Self::Both => vec![Algorithm::Gwo, Algorithm::Pso],
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    MacSim(#[from] MacSimError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Format(FormatError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<FormatError> for CliError {
    fn from(err: FormatError) -> Self {
        Self::Format(err)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } | Self::Format(FormatError::Io { .. }) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = effective_config(&cli)?;
    match cli.command {
        Command::Presets => {
            let id = cli
                .scenario
                .ok_or_else(|| CliError::Parameter("presets requires --scenario {1|2|3}".into()))?;
            let preset = load_scenario_preset(id)?;
            println!(
                "scenario {}: max_thz_link_range_m={} connections_per_node={} \
                 per_link_throughput_gbps={} aggregate_throughput_gbps={} max_latency_ms={}",
                preset.scenario_id,
                preset.max_link_range_m,
                preset.connections_per_node,
                preset.per_link_throughput_gbps,
                preset.aggregate_throughput_gbps,
                preset.max_latency_ms
            );
            Ok(())
        }
        Command::Generate => cmd_generate(&cli, &config),
        Command::Solve => cmd_solve(&cli, &config),
        Command::Batch => cmd_batch(&cli, &config),
        Command::Sweep => cmd_sweep(&cli, &config),
        Command::Macsim => cmd_macsim(&cli, &config),
    }
}

/// defaults → config file → --scenario preset → remaining flags.
fn effective_config(cli: &Cli) -> Result<AppConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            AppConfig::from_raw(&RawConfig::parse(&text)?)?
        }
        None => AppConfig::default(),
    };
    if let Some(id) = cli.scenario {
        load_scenario_preset(id)?.apply_to(&mut config.topology);
    }
    if let Some(seed) = cli.seed {
        config.base_seed = seed;
    }
    if let Some(algo) = cli.algo {
        config.algorithms = algo.algorithms();
    }
    if let Some(jobs) = cli.jobs {
        config.jobs = Some(jobs);
    }
    Ok(config)
}

fn provenance(config: &AppConfig) -> Provenance {
    Provenance {
        config_hash: config.config_hash(),
        seed: config.base_seed,
    }
}

fn meta(config: &AppConfig) -> Meta {
    Meta::new(config.config_hash(), config.base_seed)
}

fn ensure_out_dir(cli: &Cli) -> Result<(), CliError> {
    fs::create_dir_all(&cli.out).map_err(|source| CliError::Io {
        path: cli.out.display().to_string(),
        source,
    })
}

fn create_csv(path: &Path) -> Result<BufWriter<File>, CliError> {
    let file = File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(BufWriter::new(file))
}

fn write_io<T>(path: &Path, result: std::io::Result<T>) -> Result<T, CliError> {
    result.map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn cmd_generate(cli: &Cli, config: &AppConfig) -> Result<(), CliError> {
    ensure_out_dir(cli)?;
    let seed = harness::topology_seed(config.base_seed, 0);
    let topology = generate_topology(&config.topology, seed)?;
    let path = cli.out.join("topology.json");
    formats::save_topology(&path, &topology, Some(meta(config)))?;
    println!(
        "generated topology: n_bs={} n_ue={} radius_m={} seed={} -> {}",
        topology.n_bs(),
        topology.n_ue(),
        topology.deployment_radius_m(),
        config.base_seed,
        path.display()
    );
    Ok(())
}

fn solve_topology(config: &AppConfig) -> Result<Topology, CliError> {
    match &config.topology_file {
        Some(path) => Ok(formats::load_topology(path)?),
        None => Ok(generate_topology(
            &config.topology,
            harness::topology_seed(config.base_seed, 0),
        )?),
    }
}

fn cmd_solve(cli: &Cli, config: &AppConfig) -> Result<(), CliError> {
    let [algorithm] = config.algorithms.as_slice() else {
        return Err(CliError::Parameter(
            "solve runs a single algorithm; pass --algo gwo or --algo pso".into(),
        ));
    };
    let algorithm = *algorithm;
    ensure_out_dir(cli)?;
    let topology = solve_topology(config)?;
    let experiment = config.experiment();
    let SingleRun { metrics, solution } = harness::run_solver(&experiment, &topology, algorithm, 0)?;

    let solution_path = cli.out.join("solution.json");
    formats::save_solution(&solution_path, &solution, Some(meta(config)))?;
    let trace_path = cli.out.join("trace.csv");
    let w = create_csv(&trace_path)?;
    write_io(
        &trace_path,
        report::write_trace_csv(w, std::slice::from_ref(&metrics), &provenance(config)),
    )?;

    println!(
        "solve {}: utility_bps={} served_fraction={} runs=1",
        algorithm, metrics.final_utility_bps, metrics.served_fraction
    );
    Ok(())
}

fn cmd_batch(cli: &Cli, config: &AppConfig) -> Result<(), CliError> {
    ensure_out_dir(cli)?;
    let experiment = config.experiment();
    let metrics = harness::run_batch(&experiment, config.jobs)?;
    let prov = provenance(config);

    let metrics_path = cli.out.join("metrics.csv");
    write_io(
        &metrics_path,
        report::write_metrics_csv(create_csv(&metrics_path)?, &metrics, &prov),
    )?;
    let trace_path = cli.out.join("trace.csv");
    write_io(
        &trace_path,
        report::write_trace_csv(create_csv(&trace_path)?, &metrics, &prov),
    )?;
    let summaries = harness::summarize(&metrics);
    let summary_path = cli.out.join("summary.csv");
    write_io(
        &summary_path,
        report::write_summary_csv(create_csv(&summary_path)?, &summaries, &prov),
    )?;
    for &algorithm in &config.algorithms {
        let cdf = harness::utility_cdf(&metrics, algorithm)?;
        let path = cli.out.join(format!("cdf_{algorithm}.csv"));
        write_io(&path, report::write_cdf_csv(create_csv(&path)?, &cdf, &prov))?;
    }

    let best = metrics
        .iter()
        .map(|m| m.final_utility_bps)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean_served =
        metrics.iter().map(|m| m.served_fraction).sum::<f64>() / metrics.len() as f64;
    println!(
        "batch complete: runs={} best_utility_bps={} mean_served_fraction={} -> {}",
        metrics.len(),
        best,
        mean_served,
        cli.out.display()
    );
    Ok(())
}

fn cmd_sweep(cli: &Cli, config: &AppConfig) -> Result<(), CliError> {
    if config.sweep_ue_counts.is_empty() {
        return Err(CliError::Parameter(
            "sweep requires config key `sweep.ue_counts` (comma-separated list)".into(),
        ));
    }
    ensure_out_dir(cli)?;
    let experiment = config.experiment();
    let points = harness::scaling_sweep(&experiment, &config.sweep_ue_counts, config.jobs)?;
    let path = cli.out.join("sweep.csv");
    write_io(
        &path,
        report::write_sweep_csv(create_csv(&path)?, &points, &provenance(config)),
    )?;

    let runs = config.sweep_ue_counts.len() * config.algorithms.len() * config.num_topologies;
    let best = points
        .iter()
        .map(|p| p.mean_utility_bps)
        .fold(f64::NEG_INFINITY, f64::max);
    let served = points.iter().map(|p| p.mean_served_fraction).sum::<f64>() / points.len() as f64;
    println!(
        "sweep complete: runs={runs} best_mean_utility_bps={best} mean_served_fraction={served} -> {}",
        path.display()
    );
    Ok(())
}

fn cmd_macsim(cli: &Cli, config: &AppConfig) -> Result<(), CliError> {
    ensure_out_dir(cli)?;
    let latencies = simulate_initial_access(
        &config.beacon_interval,
        config.macsim_stations,
        config.macsim_max_bi,
        config.base_seed,
    )?;
    let path = cli.out.join("ia.csv");
    write_io(
        &path,
        report::write_ia_csv(
            create_csv(&path)?,
            &latencies,
            config.base_seed,
            &provenance(config),
        ),
    )?;

    let connected: Vec<usize> = latencies.iter().flatten().copied().collect();
    let mean_latency = if connected.is_empty() {
        f64::NAN
    } else {
        connected.iter().sum::<usize>() as f64 / connected.len() as f64
    };
    println!(
        "macsim: connected={}/{} mean_latency_bi={} runs=1 -> {}",
        connected.len(),
        latencies.len(),
        mean_latency,
        path.display()
    );
    Ok(())
}

//! CSV writers. Every file opens with one provenance comment line naming
//! the tool version, the effective config hash, and the base seed; rows
//! use `Display` float formatting (shortest round-trip), so bodies are
//! byte-stable for a fixed seed.

use std::io::{self, Write};

use crate::harness::{AlgorithmSummary, RunMetrics, SweepPoint};

#[derive(Debug, Clone, Copy)]
pub struct Provenance {
    pub config_hash: u64,
    pub seed: u64,
}

impl Provenance {
    pub fn header_line(&self) -> String {
        format!(
            "# dyncell {} config_hash={:016x} seed={}",
            env!("CARGO_PKG_VERSION"),
            self.config_hash,
            self.seed
        )
    }
}

/// `algorithm,topology_idx,seed,final_utility_bps,served_fraction,wall_time_s`
pub fn write_metrics_csv(
    mut w: impl Write,
    metrics: &[RunMetrics],
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(
        w,
        "algorithm,topology_idx,seed,final_utility_bps,served_fraction,wall_time_s"
    )?;
    for m in metrics {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            m.algorithm, m.topology_idx, m.seed, m.final_utility_bps, m.served_fraction, m.wall_time_s
        )?;
    }
    Ok(())
}

/// `algorithm,topology_idx,generation,best_fitness_bps`
pub fn write_trace_csv(
    mut w: impl Write,
    metrics: &[RunMetrics],
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(w, "algorithm,topology_idx,generation,best_fitness_bps")?;
    for m in metrics {
        for (generation, best) in m.trace.iter().enumerate() {
            writeln!(w, "{},{},{},{}", m.algorithm, m.topology_idx, generation, best)?;
        }
    }
    Ok(())
}

/// `algorithm,runs,mean_utility_bps,median_utility_bps,mean_served_fraction,wins`
pub fn write_summary_csv(
    mut w: impl Write,
    summaries: &[AlgorithmSummary],
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(
        w,
        "algorithm,runs,mean_utility_bps,median_utility_bps,mean_served_fraction,wins"
    )?;
    for s in summaries {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.algorithm, s.runs, s.mean_utility_bps, s.median_utility_bps, s.mean_served_fraction, s.wins
        )?;
    }
    Ok(())
}

/// `n_ue,algorithm,mean_utility_bps,mean_served_fraction`
pub fn write_sweep_csv(
    mut w: impl Write,
    points: &[SweepPoint],
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(w, "n_ue,algorithm,mean_utility_bps,mean_served_fraction")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{}",
            p.n_ue, p.algorithm, p.mean_utility_bps, p.mean_served_fraction
        )?;
    }
    Ok(())
}

/// `utility_bps,cumulative_probability` for one algorithm.
pub fn write_cdf_csv(
    mut w: impl Write,
    points: &[(f64, f64)],
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(w, "utility_bps,cumulative_probability")?;
    for (utility, probability) in points {
        writeln!(w, "{utility},{probability}")?;
    }
    Ok(())
}

/// `seed,station_id,latency_bi,connected`; latency empty when unconnected.
pub fn write_ia_csv(
    mut w: impl Write,
    latencies: &[Option<usize>],
    seed: u64,
    provenance: &Provenance,
) -> io::Result<()> {
    writeln!(w, "{}", provenance.header_line())?;
    writeln!(w, "seed,station_id,latency_bi,connected")?;
    for (station, latency) in latencies.iter().enumerate() {
        match latency {
            Some(bi) => writeln!(w, "{seed},{station},{bi},true")?,
            None => writeln!(w, "{seed},{station},,false")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Algorithm;

    fn sample_metrics() -> Vec<RunMetrics> {
        vec![RunMetrics {
            algorithm: Algorithm::Gwo,
            topology_idx: 0,
            seed: 42,
            final_utility_bps: 5.0e9,
            served_fraction: 0.75,
            wall_time_s: 0.125,
            trace: vec![1.0e9, 5.0e9],
        }]
    }

    #[test]
    fn metrics_csv_shape() {
        let mut buf = Vec::new();
        let provenance = Provenance {
            config_hash: 0xdead_beef,
            seed: 42,
        };
        write_metrics_csv(&mut buf, &sample_metrics(), &provenance).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# dyncell "));
        assert!(lines[0].contains("config_hash=00000000deadbeef"));
        assert!(lines[0].contains("seed=42"));
        assert_eq!(
            lines[1],
            "algorithm,topology_idx,seed,final_utility_bps,served_fraction,wall_time_s"
        );
        assert_eq!(lines[2], "gwo,0,42,5000000000,0.75,0.125");
    }

    #[test]
    fn trace_csv_rows_per_generation() {
        let mut buf = Vec::new();
        let provenance = Provenance {
            config_hash: 1,
            seed: 1,
        };
        write_trace_csv(&mut buf, &sample_metrics(), &provenance).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "gwo,0,0,1000000000");
        assert_eq!(lines[3], "gwo,0,1,5000000000");
    }

    #[test]
    fn ia_csv_marks_unconnected_stations() {
        let mut buf = Vec::new();
        let provenance = Provenance {
            config_hash: 2,
            seed: 7,
        };
        write_ia_csv(&mut buf, &[Some(3), None], 7, &provenance).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[2], "7,0,3,true");
        assert_eq!(lines[3], "7,1,,false");
    }
}

//! Slot-level simulator of the beacon-interval structure and the
//! five-step initial-access procedure.
//!
//! Each beacon interval (BI) opens with a beacon header interval: the AP
//! sweeps its transmit sectors (BTI) and every searching station locks
//! onto a beacon deterministically, then synchronized stations contend in
//! the slotted A-BFT phase by picking one slot uniformly at random. A
//! station whose slot nobody else picked completes the remaining access
//! steps (response, connection request, scheduled communication) within
//! the same BI; colliding stations back off a uniform number of BIs
//! before contending again. Latency is counted in whole BIs.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Beacon-interval structure knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeaconIntervalConfig {
    /// AP transmit sectors swept during BTI. Bookkeeping only: detection
    /// is deterministic, so this sizes the nominal BHI, not the outcome.
    pub num_sectors: usize,
    /// Contention slots in the A-BFT phase.
    pub num_abft_slots: usize,
    /// Whether the announcement phase is present in the BI.
    pub ati_present: bool,
    /// Upper end of the uniform [1, max] backoff window, in BIs.
    pub max_backoff_bi: usize,
}

impl Default for BeaconIntervalConfig {
    fn default() -> Self {
        Self {
            num_sectors: 16,
            num_abft_slots: 8,
            ati_present: true,
            max_backoff_bi: 4,
        }
    }
}

impl BeaconIntervalConfig {
    pub fn validate(&self) -> Result<(), MacSimError> {
        if self.num_sectors == 0 {
            return Err(MacSimError::invalid("num_sectors"));
        }
        if self.num_abft_slots == 0 {
            return Err(MacSimError::invalid("num_abft_slots"));
        }
        if self.max_backoff_bi == 0 {
            return Err(MacSimError::invalid("max_backoff_bi"));
        }
        Ok(())
    }

    /// Nominal BHI length in frames: one beacon per sector plus the
    /// contention slots.
    pub fn bhi_frames(&self) -> usize {
        self.num_sectors + self.num_abft_slots
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacSimError {
    InvalidParameter { name: &'static str },
}

impl MacSimError {
    fn invalid(name: &'static str) -> Self {
        Self::InvalidParameter { name }
    }
}

impl core::fmt::Display for MacSimError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InvalidParameter { name } => {
                write!(f, "macsim parameter `{name}` must be at least 1")
            }
        }
    }
}

impl core::error::Error for MacSimError {}

/// Initial-access steps a station walks through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IaPhase {
    /// Scanning for beacons (or waiting out a backoff).
    Searching,
    /// Locked to the sector sweep in the current BI.
    Synchronized,
    /// Preamble transmitted in a chosen A-BFT slot.
    PreambleSent,
    /// Access response received.
    RarReceived,
    Connected,
}

/// Per-station simulator state. Transitions only move forward except for
/// the collision path back to `Searching` with a fresh backoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StationIaState {
    pub phase: IaPhase,
    /// BIs elapsed since the station started searching.
    pub bi_count: usize,
    /// BIs left before the station contends again.
    pub backoff_remaining: usize,
}

impl StationIaState {
    fn new() -> Self {
        Self {
            phase: IaPhase::Searching,
            bi_count: 0,
            backoff_remaining: 0,
        }
    }
}

/// One slotted A-BFT round: every contender picks a slot uniformly and
/// succeeds iff nobody else picked the same slot. Returns per-station
/// success flags.
pub fn simulate_abft(
    num_contenders: usize,
    num_slots: usize,
    seed: u64,
) -> Result<Vec<bool>, MacSimError> {
    if num_contenders == 0 {
        return Err(MacSimError::invalid("num_contenders"));
    }
    if num_slots == 0 {
        return Err(MacSimError::invalid("num_slots"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(abft_round(num_contenders, num_slots, &mut rng).0)
}

/// Slot draw in station order, then per-slot occupancy count.
fn abft_round<R: Rng>(num_contenders: usize, num_slots: usize, rng: &mut R) -> (Vec<bool>, Vec<usize>) {
    let picks: Vec<usize> = (0..num_contenders)
        .map(|_| rng.random_range(0..num_slots))
        .collect();
    let mut occupancy = vec![0usize; num_slots];
    for &slot in &picks {
        occupancy[slot] += 1;
    }
    let success = picks.iter().map(|&slot| occupancy[slot] == 1).collect();
    (success, picks)
}

/// Simulates initial access for `num_stations` stations over at most
/// `max_bi` beacon intervals. Returns each station's connection latency in
/// BIs (1-based), or `None` if it never connects.
///
/// Per BI: stations waiting out a backoff decrement it; every other
/// unconnected station synchronizes during the sweep and contends in the
/// A-BFT. Winners finish the remaining steps within the same BI; losers
/// draw a backoff uniform in [1, max_backoff_bi] and contend again that
/// many BIs later. Draw order is fixed (slot picks in station order, then
/// backoff draws in station order), so runs are deterministic per seed.
pub fn simulate_initial_access(
    config: &BeaconIntervalConfig,
    num_stations: usize,
    max_bi: usize,
    seed: u64,
) -> Result<Vec<Option<usize>>, MacSimError> {
    config.validate()?;
    if num_stations == 0 {
        return Err(MacSimError::invalid("num_stations"));
    }
    if max_bi == 0 {
        return Err(MacSimError::invalid("max_bi"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stations = vec![StationIaState::new(); num_stations];
    let mut latency = vec![None; num_stations];

    for bi in 1..=max_bi {
        let mut contenders = Vec::new();
        for (idx, station) in stations.iter_mut().enumerate() {
            if station.phase == IaPhase::Connected {
                continue;
            }
            station.bi_count = bi;
            if station.backoff_remaining > 0 {
                station.backoff_remaining -= 1;
            }
            if station.backoff_remaining == 0 {
                // Step 1: lock onto the sector sweep.
                station.phase = IaPhase::Synchronized;
                contenders.push(idx);
            }
        }
        if contenders.is_empty() {
            continue;
        }

        let (successes, _) = abft_round(contenders.len(), config.num_abft_slots, &mut rng);
        let mut losers = Vec::new();
        for (pos, &idx) in contenders.iter().enumerate() {
            // Step 2: preamble in the chosen slot.
            stations[idx].phase = IaPhase::PreambleSent;
            if successes[pos] {
                // Steps 3–5 complete within the BI once the preamble is
                // detected alone in its slot.
                stations[idx].phase = IaPhase::RarReceived;
                stations[idx].phase = IaPhase::Connected;
                latency[idx] = Some(bi);
            } else {
                losers.push(idx);
            }
        }
        for idx in losers {
            stations[idx].phase = IaPhase::Searching;
            stations[idx].backoff_remaining = rng.random_range(1..=config.max_backoff_bi);
        }
    }
    Ok(latency)
}

//! THz link budget: distance → path loss → SNR → achievable rate.
//!
//! Two loss mechanisms are modelled. Free-space path loss grows with the
//! square of carrier frequency and distance,
//!
//! ```text
//! FSPL(f, d) = 20·log10(4π·f·d / c)   [dB]
//! ```
//!
//! and molecular absorption attenuates exponentially with distance with
//! coefficient `K` (1/m),
//!
//! ```text
//! MAL(d, K) = 10·log10(e^(K·d)) = 10·K·d·log10(e)   [dB]
//! ```
//!
//! The remaining budget terms (transmit power, both antenna gains, noise
//! power) are folded into a single configured term
//! `theta_db = 10·log10(P·G_b·G_u/N_0)`, so
//! `SNR_dB(d) = theta_db − FSPL − MAL` and the achievable rate is Shannon
//! capacity `B·log2(1 + SNR)` over the per-link bandwidth `B`. The rate law
//! is isolated behind [`achievable_rate`] so it can be swapped without
//! touching callers.

use crate::math;

/// Propagation speed, m/s. The round engineering value keeps dB figures
/// aligned with hand calculations.
pub const SPEED_OF_LIGHT_M_S: f64 = 3.0e8;

/// Everything needed to map a transmitter–receiver distance to a rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetParams {
    /// Carrier frequency, Hz.
    pub carrier_frequency_hz: f64,
    /// Per-link bandwidth `B`, Hz.
    pub bandwidth_hz: f64,
    /// Combined budget `10·log10(P·G_b·G_u/N_0)`, dB.
    pub theta_db: f64,
    /// Molecular absorption exponent `K`, 1/m. Zero disables absorption.
    pub absorption_coeff_per_m: f64,
    /// Distances below this are clamped up to it before evaluating the
    /// loss, avoiding the d → 0 singularity of FSPL.
    pub min_distance_m: f64,
}

impl Default for LinkBudgetParams {
    fn default() -> Self {
        Self {
            carrier_frequency_hz: 300.0e9,
            bandwidth_hz: 1.0e9,
            theta_db: 120.0,
            absorption_coeff_per_m: 0.0,
            min_distance_m: 0.1,
        }
    }
}

fn positive(value: f64) -> bool {
    value.is_finite() && value > 0.0
}

fn non_negative(value: f64) -> bool {
    value.is_finite() && value >= 0.0
}

impl LinkBudgetParams {
    pub fn validate(&self) -> Result<(), ChannelError> {
        if !positive(self.carrier_frequency_hz) {
            return Err(ChannelError::invalid(
                "carrier_frequency_hz",
                self.carrier_frequency_hz,
            ));
        }
        if !positive(self.bandwidth_hz) {
            return Err(ChannelError::invalid("bandwidth_hz", self.bandwidth_hz));
        }
        if !self.theta_db.is_finite() {
            return Err(ChannelError::invalid("theta_db", self.theta_db));
        }
        if !non_negative(self.absorption_coeff_per_m) {
            return Err(ChannelError::invalid(
                "absorption_coeff_per_m",
                self.absorption_coeff_per_m,
            ));
        }
        if !positive(self.min_distance_m) {
            return Err(ChannelError::invalid("min_distance_m", self.min_distance_m));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelError {
    InvalidParameter { name: &'static str, value: f64 },
}

impl ChannelError {
    fn invalid(name: &'static str, value: f64) -> Self {
        Self::InvalidParameter { name, value }
    }
}

impl core::fmt::Display for ChannelError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => {
                write!(f, "invalid channel parameter `{name}`: {value}")
            }
        }
    }
}

impl core::error::Error for ChannelError {}

/// Free-space path loss in dB. Monotone increasing in both arguments.
pub fn fspl_db(frequency_hz: f64, distance_m: f64) -> Result<f64, ChannelError> {
    if !positive(frequency_hz) {
        return Err(ChannelError::invalid("frequency_hz", frequency_hz));
    }
    if !positive(distance_m) {
        return Err(ChannelError::invalid("distance_m", distance_m));
    }
    Ok(fspl_db_unchecked(frequency_hz, distance_m))
}

fn fspl_db_unchecked(frequency_hz: f64, distance_m: f64) -> f64 {
    20.0 * math::log10(4.0 * core::f64::consts::PI * frequency_hz * distance_m / SPEED_OF_LIGHT_M_S)
}

/// Molecular absorption loss in dB, linear in distance.
pub fn mal_db(distance_m: f64, absorption_coeff_per_m: f64) -> Result<f64, ChannelError> {
    if !non_negative(distance_m) {
        return Err(ChannelError::invalid("distance_m", distance_m));
    }
    if !non_negative(absorption_coeff_per_m) {
        return Err(ChannelError::invalid(
            "absorption_coeff_per_m",
            absorption_coeff_per_m,
        ));
    }
    Ok(mal_db_unchecked(distance_m, absorption_coeff_per_m))
}

fn mal_db_unchecked(distance_m: f64, absorption_coeff_per_m: f64) -> f64 {
    10.0 * absorption_coeff_per_m * distance_m * core::f64::consts::LOG10_E
}

/// Total loss FSPL + MAL in dB at the given (clamped) distance.
pub fn path_loss_db(params: &LinkBudgetParams, distance_m: f64) -> Result<f64, ChannelError> {
    params.validate()?;
    if !non_negative(distance_m) {
        return Err(ChannelError::invalid("distance_m", distance_m));
    }
    let d = clamp_distance(params, distance_m);
    Ok(fspl_db_unchecked(params.carrier_frequency_hz, d)
        + mal_db_unchecked(d, params.absorption_coeff_per_m))
}

/// Shannon rate `B·log2(1 + 10^(SNR_dB/10))` in bit/s.
///
/// Non-negative and monotone non-increasing in distance; distances below
/// `min_distance_m` all evaluate at `min_distance_m`.
pub fn achievable_rate(params: &LinkBudgetParams, distance_m: f64) -> Result<f64, ChannelError> {
    params.validate()?;
    if !non_negative(distance_m) {
        return Err(ChannelError::invalid("distance_m", distance_m));
    }
    Ok(achievable_rate_unchecked(params, distance_m))
}

/// Rate without re-validating `params`; callers validate once up front.
pub(crate) fn achievable_rate_unchecked(params: &LinkBudgetParams, distance_m: f64) -> f64 {
    let d = clamp_distance(params, distance_m);
    let loss_db = fspl_db_unchecked(params.carrier_frequency_hz, d)
        + mal_db_unchecked(d, params.absorption_coeff_per_m);
    let snr = math::exp10((params.theta_db - loss_db) / 10.0);
    params.bandwidth_hz * math::log2(1.0 + snr)
}

fn clamp_distance(params: &LinkBudgetParams, distance_m: f64) -> f64 {
    if distance_m < params.min_distance_m {
        params.min_distance_m
    } else {
        distance_m
    }
}

//! Float helpers routed through `libm`.
//!
//! Every transcendental goes through `libm` so results are identical in
//! `no_std` builds and do not depend on the host's math library.

pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}

/// 10^x, used for dB → linear conversion.
pub(crate) fn exp10(x: f64) -> f64 {
    libm::pow(10.0, x)
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

//! Numerical tolerances shared by the library and its tests.

/// Allowed deviation of a state's squared norm (or a Bloch vector's norm) from 1.
pub const NORMALIZATION: f64 = 1e-9;

/// Comparisons of quantities that are exact up to floating-point rounding.
pub const EXACT: f64 = 1e-12;

/// Width, in standard errors, of every statistical acceptance band.
pub const SIGMAS: f64 = 4.0;

/// Two-sided 95% standard-normal quantile used by the Wilson interval.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Half-width of a `SIGMAS` band around a Bernoulli(`p`) frequency over `n` trials.
pub fn binomial_band(p: f64, n: u64) -> f64 {
    SIGMAS * (p * (1.0 - p) / n as f64).sqrt()
}

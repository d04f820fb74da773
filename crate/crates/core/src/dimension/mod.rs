//! Hausdorff dimension of numbers with alternating continued fractions
//! `[b1, 1, b2, 1, ...]`, via the transfer operator of the maps
//! `T_b(x) = (b + x) / (1 + b + x)` on `[0, 1]`.
//!
//! `[L_s f](x) = sum_b (1 + b + x)^{-2s} f(T_b x)`. A positive `f` with
//! `L_s f >= f` proves the dimension exceeds `s`; `L_s f <= f` proves it is
//! below `s`.

mod certify;
mod circles;
mod interval;
mod operator;
mod poly;
mod pressure;
mod zeta;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use certify::{
    certify_lower, certify_upper, grid_extrema, interval_extrema, lower_threshold, BoundKind, Bracket, CertifyOptions,
    DimensionCertificate, Extrema, Method, Verification, DEFAULT_CELLS, ROUNDING_FACTOR,
};
pub use circles::{branch, circles_csv, fractal_circles, Circle};
pub use interval::Interval;
pub use operator::{
    apply_operator, build_test_polynomial, hurwitz_sum, left_power_iteration, transfer_matrix, TestPolynomial,
};
pub use poly::{chebyshev_nodes, lagrange_basis, Poly};
pub use pressure::{pressure_estimate, PressureEstimate, MAX_TERMS};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_bounded, ZetaValue};

#[derive(Debug, Error)]
pub enum DimensionError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("outside domain: {0}")]
    DomainError(String),
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },
    #[error("{terms:.3e} terms exceed the budget of {cap:.3e}")]
    BudgetExceeded { terms: f64, cap: f64 },
    #[error("{kind:?} bound not certified: {reason} (sampled extremum {best_margin:.6e}, sampled min f {f_min:.6})")]
    CertificationFailed { kind: BoundKind, best_margin: f64, f_min: f64, reason: String },
}

/// Digit set `{1, ..., A}` or all positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Finite(a) => write!(f, "{a}"),
            Alphabet::Infinite => f.write_str("infinite"),
        }
    }
}

// A number for finite alphabets, the string "infinite" otherwise.
impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Alphabet::Finite(a) => s.serialize_u64(*a),
            Alphabet::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(a) => Ok(Alphabet::Finite(a)),
            Raw::Text(t) if t == "infinite" => Ok(Alphabet::Infinite),
            Raw::Text(t) => t.parse().map(Alphabet::Finite).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferConfig {
    pub alphabet: Alphabet,
    pub s: f64,
    /// Number of Chebyshev nodes, one more than the polynomial degree.
    pub order: usize,
}

impl TransferConfig {
    pub fn new(alphabet: Alphabet, s: f64, order: usize) -> Result<Self, DimensionError> {
        if !(s > 0.0 && s < 1.0) {
            return Err(DimensionError::InvalidConfig(format!("s must lie in (0, 1), got {s}")));
        }
        if order < 2 {
            return Err(DimensionError::InvalidConfig(format!("order must be at least 2, got {order}")));
        }
        if alphabet == Alphabet::Finite(0) {
            return Err(DimensionError::InvalidConfig("alphabet must contain at least one digit".into()));
        }
        Ok(TransferConfig { alphabet, s, order })
    }
}

/// `T_b(x) = (b + x) / (1 + b + x)`.
pub fn t_map(b: u64, x: f64) -> f64 {
    let b = b as f64;
    (b + x) / (1.0 + b + x)
}

/// `T_b'(x) = (1 + b + x)^{-2}`.
pub fn t_deriv(b: u64, x: f64) -> f64 {
    (1.0 + b as f64 + x).powi(-2)
}

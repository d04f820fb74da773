//! Finite-depth approximations of the pressure
//! `P(s) = lim (1/n) log sum_{|w| = n} |T_w'(0)|^s`.

use serde::{Deserialize, Serialize};

use super::{t_map, DimensionError};

/// Largest number of words summed at the final depth.
pub const MAX_TERMS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureEstimate {
    pub alphabet: u64,
    pub s: f64,
    pub depth: usize,
    /// `(1/n) log Z_n`, the defining average. Converges like `1/n`.
    pub average: f64,
    /// `log(Z_n / Z_{n-1})`. Converges geometrically since `Z_n ~ c e^{nP}`.
    pub ratio: f64,
}

impl PressureEstimate {
    /// The better of the two approximants.
    pub fn value(&self) -> f64 {
        self.ratio
    }
}

/// Sums `|(T_{b1} o ... o T_{bn})'(0)|^s` over all words of length `depth`
/// (and `depth - 1`) with digits in `1..=a`, by the chain rule along a
/// depth-first walk.
pub fn pressure_estimate(a: u64, s: f64, depth: usize) -> Result<PressureEstimate, DimensionError> {
    if a == 0 || depth == 0 {
        return Err(DimensionError::InvalidConfig(format!("need A >= 1 and depth >= 1, got A={a}, depth={depth}")));
    }
    let terms = (a as f64).powi(depth as i32);
    if terms > MAX_TERMS {
        return Err(DimensionError::BudgetExceeded { terms, cap: MAX_TERMS });
    }
    // Scale every level by the all-ones word, which is within a bounded
    // factor of the largest term, so nothing under- or overflows.
    let mut shift = vec![0.0; depth + 1];
    let (mut x, mut logd) = (0.0f64, 0.0);
    for k in 1..=depth {
        logd -= 2.0 * (2.0 + x).ln();
        x = t_map(1, x);
        shift[k] = s * logd;
    }
    let mut sums = vec![0.0; depth + 1];
    walk(a, s, depth, 0, 0.0, 0.0, &shift, &mut sums);
    let log_z = |k: usize| shift[k] + sums[k].ln();
    let average = log_z(depth) / depth as f64;
    let ratio = if depth == 1 { average } else { log_z(depth) - log_z(depth - 1) };
    Ok(PressureEstimate { alphabet: a, s, depth, average, ratio })
}

/// Innermost map first: `x` is the image of 0 so far, `logd` the log of the
/// accumulated derivative.
#[allow(clippy::too_many_arguments)]
fn walk(a: u64, s: f64, depth: usize, level: usize, x: f64, logd: f64, shift: &[f64], sums: &mut [f64]) {
    if level > 0 {
        sums[level] += (s * logd - shift[level]).exp();
    }
    if level == depth {
        return;
    }
    for b in 1..=a {
        let q = 1.0 + b as f64 + x;
        walk(a, s, depth, level + 1, (b as f64 + x) / q, logd - 2.0 * q.ln(), shift, sums);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_map_closed_form() {
        // fixed point 1/phi with multiplier phi^-4
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for &s in &[0.3, 0.5, 0.9] {
            let p = pressure_estimate(1, s, 20).unwrap();
            assert!((p.ratio + 4.0 * s * phi.ln()).abs() < 1e-9);
            assert!((p.average + 4.0 * s * phi.ln()).abs() < 0.03);
        }
    }

    #[test]
    fn decreasing_in_s() {
        let lo = pressure_estimate(2, 0.5, 12).unwrap();
        let hi = pressure_estimate(2, 0.9, 12).unwrap();
        assert!(lo.ratio > hi.ratio && lo.average > hi.average);
    }

    #[test]
    fn budget() {
        assert!(matches!(pressure_estimate(10, 0.5, 9), Err(DimensionError::BudgetExceeded { .. })));
        assert!(pressure_estimate(10, 0.5, 8).is_ok());
    }
}

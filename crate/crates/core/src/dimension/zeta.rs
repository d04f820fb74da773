//! Hurwitz zeta `zeta(s, x) = sum_{b >= 0} (b + x)^(-s)` for real `s > 1`.
//!
//! Direct summation of the first `K` terms, then Euler-Maclaurin with four
//! Bernoulli corrections. For real `s` every derivative of `t^(-s)` has fixed
//! sign, so the remainder is bounded by the first omitted correction; `K` is
//! raised until that bound is below `1e-15`.

use super::DimensionError;

/// `B_{2j} / (2j)!` for `j = 1..=5`; the fifth bounds the remainder.
const BERNOULLI_OVER_FACTORIAL: [f64; 5] =
    [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0];

const TAIL_TARGET: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    /// Bound on truncation plus floating-point error.
    pub error: f64,
}

pub fn hurwitz_zeta(s: f64, x: f64) -> Result<f64, DimensionError> {
    hurwitz_zeta_bounded(s, x).map(|z| z.value)
}

pub fn hurwitz_zeta_bounded(s: f64, x: f64) -> Result<ZetaValue, DimensionError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(DimensionError::DomainError(format!("Hurwitz zeta needs s > 1, got {s}")));
    }
    if !(x >= 1.0) || !x.is_finite() {
        return Err(DimensionError::DomainError(format!("Hurwitz zeta needs x >= 1, got {x}")));
    }
    // smallest N = x + K with the fifth correction term below the target
    let mut k = 0usize;
    loop {
        let n = x + k as f64;
        if remainder_bound(s, n) < TAIL_TARGET {
            break;
        }
        k += if n < 8.0 { 1 } else { (n * 0.25) as usize };
    }
    let n = x + k as f64;
    let mut head = 0.0;
    for b in (0..k).rev() {
        head += (x + b as f64).powf(-s);
    }
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s; // s (s+1) ... (s + 2j - 2)
    let mut power = n.powf(-s - 1.0);
    for (j, &c) in BERNOULLI_OVER_FACTORIAL[..4].iter().enumerate() {
        tail += c * rising * power;
        rising *= (s + (2 * j + 1) as f64) * (s + (2 * j + 2) as f64);
        power /= n * n;
    }
    let value = head + tail;
    let rounding = 4.0 * (k as f64 + 16.0) * f64::EPSILON * value.abs();
    Ok(ZetaValue { value, error: remainder_bound(s, n) + rounding })
}

fn remainder_bound(s: f64, n: f64) -> f64 {
    let rising: f64 = (0..9).map(|i| s + i as f64).product();
    (BERNOULLI_OVER_FACTORIAL[4] * rising * n.powf(-s - 9.0)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        assert!((hurwitz_zeta(2.0, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((hurwitz_zeta(2.0, 2.0).unwrap() - (PI * PI / 6.0 - 1.0)).abs() < 1e-12);
        assert!((hurwitz_zeta(4.0, 1.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn apery_against_direct_sum() {
        // direct sum to 10^6 plus the integral tail estimate
        let m = 1_000_000u64;
        let mut s = 0.0;
        for b in (1..=m).rev() {
            s += (b as f64).powi(-3);
        }
        s += 1.0 / (2.0 * (m as f64 + 0.5).powi(2));
        assert!((hurwitz_zeta(3.0, 1.0).unwrap() - s).abs() < 1e-9);
        assert!((hurwitz_zeta(3.0, 1.0).unwrap() - 1.2020569032).abs() < 1e-9);
    }

    #[test]
    fn shift_identity() {
        for &s in &[1.2, 1.598, 2.6, 5.5] {
            for &x in &[1.0, 2.3, 7.9] {
                let lhs = hurwitz_zeta(s, x).unwrap();
                let rhs = x.powf(-s) + hurwitz_zeta(s, x + 1.0).unwrap();
                assert!((lhs - rhs).abs() < 1e-13, "s={s} x={x}");
            }
        }
    }

    #[test]
    fn error_bounds_are_small() {
        let z = hurwitz_zeta_bounded(1.598, 2.0).unwrap();
        assert!(z.error < 1e-13, "{}", z.error);
    }

    #[test]
    fn domain() {
        assert!(matches!(hurwitz_zeta(1.0, 2.0), Err(DimensionError::DomainError(_))));
        assert!(matches!(hurwitz_zeta(2.0, 0.5), Err(DimensionError::DomainError(_))));
        assert!(matches!(hurwitz_zeta(f64::NAN, 2.0), Err(DimensionError::DomainError(_))));
    }
}

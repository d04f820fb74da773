//! The transfer operator `L_s`, its Chebyshev-Lagrange discretisation, and
//! the leading left eigenvector that defines the test polynomial.

use serde::{Deserialize, Serialize};

use super::poly::{chebyshev_nodes, lagrange_basis, Poly};
use super::zeta::hurwitz_zeta;
use super::{t_map, Alphabet, DimensionError, TransferConfig};

/// `[L_s f](x)`: a sum of `A` terms in finite mode, `deg f + 1` Hurwitz zeta
/// values in infinite mode.
pub fn apply_operator(cfg: &TransferConfig, f: &Poly, x: f64) -> Result<f64, DimensionError> {
    match cfg.alphabet {
        Alphabet::Finite(a) => Ok(finite_sum(a, cfg.s, f, x)),
        Alphabet::Infinite => hurwitz_sum(cfg.s, &f.centered_at(1.0), x),
    }
}

fn finite_sum(a: u64, s: f64, f: &Poly, x: f64) -> f64 {
    (1..=a).rev().map(|b| (1.0 + b as f64 + x).powf(-2.0 * s) * f.eval(t_map(b, x))).sum()
}

/// `sum_n a_n (-1)^n zeta(2s + n, 2 + x)` for `f = sum a_n (x - 1)^n`.
pub fn hurwitz_sum(s: f64, centered: &[f64], x: f64) -> Result<f64, DimensionError> {
    let mut total = 0.0;
    for (n, &a) in centered.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        total += a * sign * hurwitz_zeta(2.0 * s + n as f64, 2.0 + x)?;
    }
    Ok(total)
}

/// `M[j][k] = [L_s l_j](y_k)`.
pub fn transfer_matrix(cfg: &TransferConfig) -> Result<(Vec<f64>, Vec<Vec<f64>>), DimensionError> {
    let nodes = chebyshev_nodes(cfg.order);
    let mut m = Vec::with_capacity(cfg.order);
    for j in 0..cfg.order {
        let basis = lagrange_basis(&nodes, j);
        let row: Result<Vec<f64>, _> = nodes.iter().map(|&y| apply_operator(cfg, &basis, y)).collect();
        m.push(row?);
    }
    Ok((nodes, m))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestPolynomial {
    /// Monomial coefficients, constant term first.
    pub coeffs: Vec<f64>,
    pub nodes: Vec<f64>,
    /// Left eigenvector `v_s`: unit Euclidean norm, positive sum.
    pub eigenvector: Vec<f64>,
    pub eigenvalue: f64,
    pub iterations: usize,
}

impl TestPolynomial {
    pub fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

const POWER_TOL: f64 = 1e-13;
const POWER_MAX_ITER: usize = 100_000;

/// Power iteration `v <- v M / |v M|` from the all-ones vector.
pub fn left_power_iteration(m: &[Vec<f64>]) -> Result<(Vec<f64>, f64, usize), DimensionError> {
    let n = m.len();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    for it in 1..=POWER_MAX_ITER {
        let mut w: Vec<f64> = (0..n).map(|k| (0..n).map(|j| v[j] * m[j][k]).sum()).collect();
        let lambda = w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
        let nw = norm(&w);
        if !(nw > 0.0) || !nw.is_finite() {
            return Err(DimensionError::ConvergenceFailure { iterations: it, residual });
        }
        let sign = if w.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        for x in &mut w {
            *x *= sign / nw;
        }
        residual = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if residual < POWER_TOL {
            if lambda <= 0.0 {
                return Err(DimensionError::ConvergenceFailure { iterations: it, residual });
            }
            return Ok((v, lambda, it));
        }
    }
    Err(DimensionError::ConvergenceFailure { iterations: POWER_MAX_ITER, residual })
}

/// `f_s = sum_j v_j l_j` for the leading left eigenvector `v` of `M`.
pub fn build_test_polynomial(cfg: &TransferConfig) -> Result<TestPolynomial, DimensionError> {
    let (nodes, m) = transfer_matrix(cfg)?;
    let (v, eigenvalue, iterations) = left_power_iteration(&m)?;
    let mut f = Poly::constant(0.0);
    for (j, &vj) in v.iter().enumerate() {
        f = f.add(&lagrange_basis(&nodes, j).scale(vj));
    }
    Ok(TestPolynomial { coeffs: f.coeffs().to_vec(), nodes, eigenvector: v, eigenvalue, iterations })
}

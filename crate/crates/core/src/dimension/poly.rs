//! Dense real polynomials, Chebyshev nodes and Lagrange bases.

use serde::{Deserialize, Serialize};

/// Polynomial with coefficients in increasing degree order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect() }
    }

    /// Bound on `|f|` over `[0, 1]`: the sum of absolute coefficients.
    pub fn sup_bound_unit(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Bound on `|f'|` over `[0, 1]`.
    pub fn derivative_bound_unit(&self) -> f64 {
        self.derivative().sup_bound_unit()
    }

    /// Coefficients `a_n` with `f(x) = sum a_n (x - c)^n`.
    pub fn centered_at(&self, c: f64) -> Vec<f64> {
        let d = self.coeffs.len();
        let mut out = vec![0.0; d];
        for (i, &ci) in self.coeffs.iter().enumerate() {
            // (c + (x - c))^i = sum_n C(i, n) c^(i-n) (x - c)^n
            let mut binom = 1.0;
            for (n, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += ci * binom * c.powi((i - n) as i32);
                binom = binom * (i - n) as f64 / (n + 1) as f64;
            }
        }
        out
    }

    /// Inverse of [`Poly::centered_at`].
    pub fn from_centered(a: &[f64], c: f64) -> Poly {
        Poly::new(a.to_vec()).centered_at(-c).into()
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(0.0);
        Poly { coeffs: (0..n).map(|i| get(self, i) + get(other, i)).collect() }
    }

    /// Product with `(x - r)`.
    fn times_root(&self, r: f64) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= r * c;
        }
        Poly { coeffs: out }
    }
}

impl From<Vec<f64>> for Poly {
    fn from(coeffs: Vec<f64>) -> Self {
        Poly { coeffs }
    }
}

/// `y_j = (cos((2j - 1) pi / 2N) + 1) / 2` for `j = 1..=N`, decreasing in `j`.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (1..=n).map(|j| 0.5 * (((2 * j - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos() + 1.0)).collect()
}

/// `l_j` with `l_j(y_k) = delta_jk`, in monomial coefficients.
pub fn lagrange_basis(nodes: &[f64], j: usize) -> Poly {
    let mut p = Poly::constant(1.0);
    let mut denom = 1.0;
    for (k, &yk) in nodes.iter().enumerate() {
        if k != j {
            p = p.times_root(yk);
            denom *= nodes[j] - yk;
        }
    }
    p.scale(1.0 / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes() {
        assert_eq!(chebyshev_nodes(1), vec![0.5]);
        let two = chebyshev_nodes(2);
        assert!((two[0] - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-15);
        assert!((two[1] - (2.0 - 2f64.sqrt()) / 4.0).abs() < 1e-15);
        let five = chebyshev_nodes(5);
        assert!(five.windows(2).all(|w| w[0] > w[1]));
        assert!(five.iter().all(|&y| 0.0 < y && y < 1.0));
    }

    #[test]
    fn lagrange_is_cardinal() {
        let y = chebyshev_nodes(5);
        for j in 0..5 {
            let l = lagrange_basis(&y, j);
            assert_eq!(l.degree(), 4);
            for (k, &yk) in y.iter().enumerate() {
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((l.eval(yk) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn recentering_roundtrip() {
        let p = Poly::new(vec![0.5, -0.2, 0.1, -0.05, 0.01]);
        let a = p.centered_at(1.0);
        for x in [0.0, 0.3, 0.9, 1.4] {
            let shifted: f64 = a.iter().enumerate().map(|(n, &an)| an * (x - 1.0f64).powi(n as i32)).sum();
            assert!((shifted - p.eval(x)).abs() < 1e-14);
        }
        let back = Poly::from_centered(&a, 1.0);
        for (u, v) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((u - v).abs() < 1e-14);
        }
    }

    #[test]
    fn bounds_dominate_samples() {
        let p = Poly::new(vec![0.526229, -0.225988, 0.116313, -0.0513245, 0.0121844]);
        let d = p.derivative();
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            assert!(p.eval(x).abs() <= p.sup_bound_unit());
            assert!(d.eval(x).abs() <= p.derivative_bound_unit());
        }
    }
}

//! Gaps of the Cantor construction for numbers `[b1, 1, b2, 1, ...]`,
//! as plot-ready circles on the unit interval.
//!
//! Such numbers are the attractor of `S_b(y) = 1 / (b + 1/(1 + y))`, whose
//! convex hull is `[0, 1/phi]`. The first stage removes `(1/phi, 1]` and the
//! gaps between consecutive pieces `S_b(hull) = [1/(b+1), 1/(b + 1/phi)]`;
//! stage `d` removes the images of the first-stage gaps under every word of
//! length `d - 1`. Digits are capped, so the accumulation at 0 is truncated.

use serde::{Deserialize, Serialize};

use super::DimensionError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: f64,
    pub diameter: f64,
    pub depth: usize,
}

impl Circle {
    pub fn lo(&self) -> f64 {
        self.center - self.diameter / 2.0
    }

    pub fn hi(&self) -> f64 {
        self.center + self.diameter / 2.0
    }
}

fn inv_phi() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// `S_b(y)`, increasing in `y`.
pub fn branch(b: u64, y: f64) -> f64 {
    1.0 / (b as f64 + 1.0 / (1.0 + y))
}

/// Removed intervals through `depth` stages with digits up to `max_digit`.
pub fn fractal_circles(depth: usize, max_digit: u64) -> Result<Vec<Circle>, DimensionError> {
    if depth == 0 || max_digit < 2 {
        return Err(DimensionError::InvalidConfig(format!(
            "need depth >= 1 and max digit >= 2, got depth={depth}, max digit={max_digit}"
        )));
    }
    let g = inv_phi();
    let base: Vec<(f64, f64)> = (1..max_digit).map(|b| (branch(b + 1, g), branch(b, 0.0))).collect();
    let mut out = vec![Circle { center: (1.0 + g) / 2.0, diameter: 1.0 - g, depth: 1 }];
    let mut words: Vec<Vec<u64>> = vec![Vec::new()];
    for d in 1..=depth {
        for w in &words {
            for &(lo, hi) in &base {
                let (a, b) = (apply(w, lo), apply(w, hi));
                out.push(Circle { center: (a + b) / 2.0, diameter: b - a, depth: d });
            }
        }
        if d < depth {
            words = words
                .iter()
                .flat_map(|w| {
                    (1..=max_digit).map(move |b| {
                        let mut v = w.clone();
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
    }
    Ok(out)
}

/// `S_{w1} o S_{w2} o ... (y)`.
fn apply(word: &[u64], y: f64) -> f64 {
    word.iter().rev().fold(y, |acc, &b| branch(b, acc))
}

/// `center,diameter,depth` rows with a header.
pub fn circles_csv(circles: &[Circle]) -> String {
    let mut out = String::from("center,diameter,depth\n");
    for c in circles {
        out.push_str(&format!("{:.17},{:.17},{}\n", c.center, c.diameter, c.depth));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_stage() {
        let c = fractal_circles(1, 50).unwrap();
        assert_eq!(c.len(), 50);
        let total: f64 = c.iter().map(|c| c.diameter).sum();
        assert!(total > 0.0 && total < 1.0);
        // gap between the b = 1 and b = 2 pieces is (1/(2 + 1/phi), 1/2)
        assert!(c.iter().any(|k| (k.hi() - 0.5).abs() < 1e-15 && (k.lo() - 1.0 / (2.0 + inv_phi())).abs() < 1e-15));
    }

    #[test]
    fn disjoint_and_nested() {
        let c = fractal_circles(3, 8).unwrap();
        let mut sorted = c.clone();
        sorted.sort_by(|a, b| a.lo().partial_cmp(&b.lo()).unwrap());
        for w in sorted.windows(2) {
            assert!(w[0].hi() <= w[1].lo() + 1e-15, "{:?} overlaps {:?}", w[0], w[1]);
        }
        assert!(c.iter().all(|k| k.diameter > 0.0 && k.lo() >= 0.0 && k.hi() <= 1.0 + 1e-15));
        let total: f64 = c.iter().map(|c| c.diameter).sum();
        assert!(total < 1.0);
    }

    #[test]
    fn csv_has_header() {
        let csv = circles_csv(&fractal_circles(2, 3).unwrap());
        assert!(csv.starts_with("center,diameter,depth\n"));
        assert_eq!(csv.lines().count(), 1 + 1 + 2 + 3 * 2);
    }
}

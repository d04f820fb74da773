//! Certified sign of `L_s f - f` on `[0, 1]`.
//!
//! The default method evaluates the difference `D` on a uniform grid and
//! bounds it between nodes with a per-cell Lipschitz constant built from
//! closed-form derivative bounds of every summand. The interval method
//! encloses `D` on each cell with outward-rounded arithmetic instead.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::operator::{build_test_polynomial, TestPolynomial};
use super::poly::Poly;
use super::zeta::hurwitz_zeta_bounded;
use super::{Alphabet, DimensionError, TransferConfig};

pub const DEFAULT_CELLS: usize = 100_000;

/// Certified margins must exceed this multiple of the rounding budget.
pub const ROUNDING_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `L_s f > f`, hence `theta > s`.
    Lower,
    /// `L_s f < f`, hence `theta < s`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GridLipschitz,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub cells: usize,
    pub method: Method,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { cells: DEFAULT_CELLS, method: Method::GridLipschitz }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub method: Method,
    pub cells: usize,
    /// Largest per-cell Lipschitz constant of `L_s f - f` (grid method).
    pub lipschitz_max: Option<f64>,
    /// Largest per-cell enclosure width (interval method).
    pub interval_width_max: Option<f64>,
    /// Bound on accumulated floating-point error in one evaluation of `D`.
    pub rounding_budget: f64,
    /// Extremum of `D` over the grid nodes (not certified).
    pub sampled_extremum: f64,
    pub sampled_f_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionCertificate {
    pub kind: BoundKind,
    pub s: f64,
    pub alphabet: Alphabet,
    pub order: usize,
    /// Certified lower bound on `min D` (lower) or upper bound on `max D` (upper).
    pub margin: f64,
    /// Certified lower bound on `min f` over `[0, 1]`.
    pub f_min: f64,
    pub verification: Verification,
    pub poly: TestPolynomial,
}

/// Extrema of `D = L_s f - f` and of `f` as certified bounds plus samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub d_lower: f64,
    pub d_upper: f64,
    pub f_lower: f64,
    pub sampled_d_min: f64,
    pub sampled_d_max: f64,
    pub sampled_f_min: f64,
    pub lipschitz_max: f64,
    pub width_max: f64,
    pub budget: f64,
}

/// Per-node data for the grid method.
#[derive(Debug, Clone, Copy)]
struct Node {
    d: f64,
    f: f64,
    /// Lipschitz bound of `D` valid on the cell to the right of the node.
    lip: f64,
    budget: f64,
}

fn finite_node(a: u64, s: f64, f: &Poly, f0: f64, f1: f64, x: f64) -> Node {
    let deg = f.degree() as f64;
    let (mut sum, mut abs, mut lip) = (0.0, 0.0, f1);
    for b in (1..=a).rev() {
        let q = 1.0 + b as f64 + x;
        let w = q.powf(-2.0 * s);
        let term = w * f.eval((b as f64 + x) / q);
        sum += term;
        abs += term.abs();
        // |d/dx w f(T_b x)| <= w (2s |f| / q + |f'| / q^2), decreasing in x
        lip += w * (2.0 * s * f0 / q + f1 / (q * q));
    }
    let fx = f.eval(x);
    let eps = f64::EPSILON;
    let budget = eps * ((deg + 12.0 + a as f64) * abs + (2.0 * deg + 4.0) * f0);
    Node { d: sum - fx, f: fx, lip, budget }
}

fn hurwitz_node(s: f64, centered: &[f64], f: &Poly, f0: f64, f1: f64, x: f64) -> Result<Node, DimensionError> {
    let mut sum = 0.0;
    let mut lip = f1;
    let mut err = 0.0;
    let mut next = hurwitz_zeta_bounded(2.0 * s, 2.0 + x)?;
    for (n, &an) in centered.iter().enumerate() {
        let sigma = 2.0 * s + n as f64;
        let z = next;
        next = hurwitz_zeta_bounded(sigma + 1.0, 2.0 + x)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * an * z.value;
        err += an.abs() * (z.error + 4.0 * f64::EPSILON * z.value);
        // d/dx zeta(sigma, 2 + x) = -sigma zeta(sigma + 1, 2 + x), decreasing in magnitude
        lip += an.abs() * sigma * (next.value + next.error);
    }
    let fx = f.eval(x);
    let deg = f.degree() as f64;
    let budget = err + f64::EPSILON * ((centered.len() as f64 + 4.0) * sum.abs() + (2.0 * deg + 4.0) * f0);
    Ok(Node { d: sum - fx, f: fx, lip, budget })
}

/// Grid plus Lipschitz bounds for `D` and `f` on `[0, 1]`.
pub fn grid_extrema(cfg: &TransferConfig, f: &Poly, cells: usize) -> Result<Extrema, DimensionError> {
    let f0 = f.sup_bound_unit();
    let f1 = f.derivative_bound_unit();
    let centered = f.centered_at(1.0);
    let h = 1.0 / cells as f64;
    let nodes: Result<Vec<Node>, DimensionError> = (0..=cells)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 * h;
            match cfg.alphabet {
                Alphabet::Finite(a) => Ok(finite_node(a, cfg.s, f, f0, f1, x)),
                Alphabet::Infinite => hurwitz_node(cfg.s, &centered, f, f0, f1, x),
            }
        })
        .collect();
    let nodes = nodes?;
    let mut ex = Extrema {
        d_lower: f64::INFINITY,
        d_upper: f64::NEG_INFINITY,
        f_lower: f64::INFINITY,
        sampled_d_min: f64::INFINITY,
        sampled_d_max: f64::NEG_INFINITY,
        sampled_f_min: f64::INFINITY,
        lipschitz_max: 0.0,
        width_max: 0.0,
        budget: 0.0,
    };
    for n in &nodes {
        ex.sampled_d_min = ex.sampled_d_min.min(n.d);
        ex.sampled_d_max = ex.sampled_d_max.max(n.d);
        ex.sampled_f_min = ex.sampled_f_min.min(n.f);
        ex.budget = ex.budget.max(n.budget);
    }
    for w in nodes.windows(2) {
        let (l, r) = (w[0], w[1]);
        let mid = 0.5 * (l.d + r.d);
        let slack = 0.5 * l.lip * h;
        ex.d_lower = ex.d_lower.min(mid - slack);
        ex.d_upper = ex.d_upper.max(mid + slack);
        ex.f_lower = ex.f_lower.min(0.5 * (l.f + r.f) - 0.5 * f1 * h);
        ex.lipschitz_max = ex.lipschitz_max.max(l.lip);
    }
    // account for rounding in the node values themselves
    ex.d_lower -= ex.budget;
    ex.d_upper += ex.budget;
    ex.f_lower -= ex.budget;
    Ok(ex)
}

fn cell_enclosure(
    cfg: &TransferConfig,
    coeffs: &[f64],
    centered: &[f64],
    x: Interval,
) -> Result<(Interval, Interval), DimensionError> {
    let f_x = Interval::horner(coeffs, x);
    let two_s = 2.0 * cfg.s;
    let lf = match cfg.alphabet {
        Alphabet::Finite(a) => {
            let mut acc = Interval::point(0.0);
            for b in (1..=a).rev() {
                let bb = Interval::point(b as f64);
                let q = Interval::point(1.0) + bb + x;
                let w = q.powf_neg(-two_s);
                // T_b(x) = 1 - 1/q has no dependency problem
                let t = Interval::point(1.0) - Interval::point(1.0).div_pos(q);
                acc = acc + w * Interval::horner(coeffs, t);
            }
            acc
        }
        Alphabet::Infinite => {
            let mut acc = Interval::point(0.0);
            for (n, &an) in centered.iter().enumerate() {
                let sigma = two_s + n as f64;
                // zeta(sigma, 2 + x) is decreasing in x
                let hi = hurwitz_zeta_bounded(sigma, 2.0 + x.lo)?;
                let lo = hurwitz_zeta_bounded(sigma, 2.0 + x.hi)?;
                let z = Interval::new((lo.value - lo.error).next_down(), (hi.value + hi.error).next_up());
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                acc = acc + Interval::point(sign * an) * z;
            }
            acc
        }
    };
    Ok((lf - f_x, f_x))
}

/// Outward-rounded enclosures of `D` and `f` on every cell.
pub fn interval_extrema(cfg: &TransferConfig, f: &Poly, cells: usize) -> Result<Extrema, DimensionError> {
    let coeffs = f.coeffs().to_vec();
    let centered = f.centered_at(1.0);
    let h = 1.0 / cells as f64;
    let encl: Result<Vec<(Interval, Interval, f64, f64)>, DimensionError> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let lo = i as f64 * h;
            let hi = if i + 1 == cells { 1.0 } else { (i + 1) as f64 * h };
            let (d, fx) = cell_enclosure(cfg, &coeffs, &centered, Interval::new(lo, hi))?;
            let (dp, fp) = cell_enclosure(cfg, &coeffs, &centered, Interval::point(lo))?;
            Ok((d, fx, 0.5 * (dp.lo + dp.hi), 0.5 * (fp.lo + fp.hi)))
        })
        .collect();
    let mut ex = Extrema {
        d_lower: f64::INFINITY,
        d_upper: f64::NEG_INFINITY,
        f_lower: f64::INFINITY,
        sampled_d_min: f64::INFINITY,
        sampled_d_max: f64::NEG_INFINITY,
        sampled_f_min: f64::INFINITY,
        lipschitz_max: 0.0,
        width_max: 0.0,
        budget: 0.0,
    };
    for (d, fx, dp, fp) in encl? {
        ex.d_lower = ex.d_lower.min(d.lo);
        ex.d_upper = ex.d_upper.max(d.hi);
        ex.f_lower = ex.f_lower.min(fx.lo);
        ex.width_max = ex.width_max.max(d.width());
        ex.sampled_d_min = ex.sampled_d_min.min(dp);
        ex.sampled_d_max = ex.sampled_d_max.max(dp);
        ex.sampled_f_min = ex.sampled_f_min.min(fp);
    }
    Ok(ex)
}

fn certify(
    cfg: &TransferConfig,
    kind: BoundKind,
    opts: CertifyOptions,
) -> Result<DimensionCertificate, DimensionError> {
    if opts.cells == 0 {
        return Err(DimensionError::InvalidConfig("grid needs at least one cell".into()));
    }
    let poly = build_test_polynomial(cfg)?;
    let f = poly.poly();
    let ex = match opts.method {
        Method::GridLipschitz => grid_extrema(cfg, &f, opts.cells)?,
        Method::Interval => interval_extrema(cfg, &f, opts.cells)?,
    };
    let (margin, sampled) = match kind {
        BoundKind::Lower => (ex.d_lower, ex.sampled_d_min),
        BoundKind::Upper => (ex.d_upper, ex.sampled_d_max),
    };
    let verification = Verification {
        method: opts.method,
        cells: opts.cells,
        lipschitz_max: (opts.method == Method::GridLipschitz).then_some(ex.lipschitz_max),
        interval_width_max: (opts.method == Method::Interval).then_some(ex.width_max),
        rounding_budget: ex.budget,
        sampled_extremum: sampled,
        sampled_f_min: ex.sampled_f_min,
    };
    let signed = match kind {
        BoundKind::Lower => margin,
        BoundKind::Upper => -margin,
    };
    let reason = if !(ex.f_lower > 0.0) {
        Some(format!("test function not certified positive (bound {:.3e})", ex.f_lower))
    } else if !(signed > 0.0) {
        Some(format!(
            "difference not certified {} (bound {margin:.3e})",
            if kind == BoundKind::Lower { "positive" } else { "negative" }
        ))
    } else if !(signed > ROUNDING_FACTOR * ex.budget) {
        Some(format!("margin {margin:.3e} within {ROUNDING_FACTOR}x rounding budget {:.3e}", ex.budget))
    } else {
        None
    };
    if let Some(reason) = reason {
        return Err(DimensionError::CertificationFailed {
            kind,
            best_margin: sampled,
            f_min: ex.sampled_f_min,
            reason,
        });
    }
    Ok(DimensionCertificate {
        kind,
        s: cfg.s,
        alphabet: cfg.alphabet,
        order: cfg.order,
        margin,
        f_min: ex.f_lower,
        verification,
        poly,
    })
}

/// Certifies `theta_A > s` with a finite alphabet.
pub fn certify_lower(
    a: u64,
    s: f64,
    order: usize,
    opts: CertifyOptions,
) -> Result<DimensionCertificate, DimensionError> {
    let cfg = TransferConfig::new(Alphabet::Finite(a), s, order)?;
    certify(&cfg, BoundKind::Lower, opts)
}

/// Certifies that the unbounded-digit dimension is below `s` (Hurwitz mode).
pub fn certify_upper(s: f64, order: usize, opts: CertifyOptions) -> Result<DimensionCertificate, DimensionError> {
    let cfg = TransferConfig::new(Alphabet::Infinite, s, order)?;
    certify(&cfg, BoundKind::Upper, opts)
}

/// `lo` certified, `hi` not: the threshold lies in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Bisects the largest `s` at which [`certify_lower`] succeeds.
pub fn lower_threshold(
    a: u64,
    order: usize,
    lo: f64,
    hi: f64,
    tol: f64,
    opts: CertifyOptions,
) -> Result<Bracket, DimensionError> {
    let ok = |s: f64| -> Result<bool, DimensionError> {
        match certify_lower(a, s, order, opts) {
            Ok(_) => Ok(true),
            Err(DimensionError::CertificationFailed { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    if !ok(lo)? || ok(hi)? {
        return Err(DimensionError::InvalidConfig(format!(
            "[{lo}, {hi}] does not bracket the certification threshold"
        )));
    }
    let (mut lo, mut hi, mut steps) = (lo, hi, 0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    Ok(Bracket { lo, hi, steps })
}

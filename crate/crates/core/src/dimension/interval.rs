//! Outward-rounded interval arithmetic, just enough for the certifier.

use std::ops::{Add, Mul, Neg, Sub};

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Relative slack applied to library calls that are not correctly rounded.
const LIBM_SLACK: f64 = 4.0 * f64::EPSILON;

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "{lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// `x +- r`, rounded outward.
    pub fn around(x: f64, r: f64) -> Self {
        Interval { lo: (x - r).next_down(), hi: (x + r).next_up() }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn widen_relative(lo: f64, hi: f64) -> Self {
        Interval { lo: (lo - lo.abs() * LIBM_SLACK).next_down(), hi: (hi + hi.abs() * LIBM_SLACK).next_up() }
    }

    /// `x^e` for positive `x` and negative `e` (decreasing in `x`).
    pub fn powf_neg(self, e: f64) -> Self {
        debug_assert!(self.lo > 0.0 && e < 0.0);
        Self::widen_relative(self.hi.powf(e), self.lo.powf(e))
    }

    /// `x / y` with `y` strictly positive.
    pub fn div_pos(self, y: Interval) -> Self {
        debug_assert!(y.lo > 0.0);
        let c = [self.lo / y.lo, self.lo / y.hi, self.hi / y.lo, self.hi / y.hi];
        Interval {
            lo: c.iter().copied().fold(f64::INFINITY, f64::min).next_down(),
            hi: c.iter().copied().fold(f64::NEG_INFINITY, f64::max).next_up(),
        }
    }

    /// Horner evaluation over the interval.
    pub fn horner(coeffs: &[f64], x: Interval) -> Interval {
        coeffs.iter().rev().fold(Interval::point(0.0), |acc, &c| acc * x + Interval::point(c))
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Interval {
            lo: c.iter().copied().fold(f64::INFINITY, f64::min).next_down(),
            hi: c.iter().copied().fold(f64::NEG_INFINITY, f64::max).next_up(),
        }
    }
}

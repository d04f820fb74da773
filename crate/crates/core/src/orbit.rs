//! Norm balls in the semigroup generated by `M_b = [[1, b], [1, b + 1]]`,
//! their numerator orbits, and reductions modulo `q`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfrac::{generator_matrix, Mat2, Rational};

/// Default element cap for [`ball`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("ball exceeds the element cap of {cap}")]
    BudgetExceeded { cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Frobenius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupBall {
    pub alphabet: u64,
    pub radius: u64,
    pub norm_kind: NormKind,
    /// Distinct elements, sorted by entries.
    pub elements: Vec<Mat2>,
}

/// Summary written by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallStats {
    #[serde(rename = "A")]
    pub alphabet: u64,
    #[serde(rename = "N")]
    pub radius: u64,
    pub norm: NormKind,
    pub size: usize,
    pub growth_exponent: f64,
}

impl SemigroupBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `ln |B_N| / ln N`.
    pub fn growth_exponent(&self) -> f64 {
        (self.len() as f64).ln() / (self.radius as f64).ln()
    }

    pub fn stats(&self) -> BallStats {
        BallStats {
            alphabet: self.alphabet,
            radius: self.radius,
            norm: self.norm_kind,
            size: self.len(),
            growth_exponent: self.growth_exponent(),
        }
    }
}

/// Entries of a nonnegative ball element. Every entry is at most the radius,
/// so `u64` suffices; products are formed in `u128`.
type Entries = [u64; 4];

/// Frontier elements expanded between two checks of the element cap.
const CHUNK: usize = 1 << 16;

fn norm_sq(m: &Entries) -> Option<u128> {
    m.iter().try_fold(0u128, |acc, &x| acc.checked_add(u128::from(x) * u128::from(x)))
}

/// `m * M_b`, or `None` once the product leaves the ball.
fn times_generator(m: &Entries, b: u64, limit: u128) -> Option<Entries> {
    let [a, c, e, f] = m.map(u128::from);
    let b = u128::from(b);
    let entries = [
        a + c,
        a.checked_mul(b)?.checked_add(c.checked_mul(b + 1)?)?,
        e + f,
        e.checked_mul(b)?.checked_add(f.checked_mul(b + 1)?)?,
    ];
    let out: Entries = [
        u64::try_from(entries[0]).ok()?,
        u64::try_from(entries[1]).ok()?,
        u64::try_from(entries[2]).ok()?,
        u64::try_from(entries[3]).ok()?,
    ];
    (norm_sq(&out)? <= limit).then_some(out)
}

/// All nonempty generator products with Frobenius norm at most `radius`.
///
/// Products of nonnegative matrices only grow entrywise, so a breadth-first
/// search that stops at the first digit leaving the ball finds every element.
pub fn ball(alphabet: u64, radius: u64, cap: usize) -> Result<SemigroupBall, OrbitError> {
    if alphabet == 0 {
        return Err(OrbitError::InvalidInput("alphabet bound must be at least 1".into()));
    }
    let limit = u128::from(radius) * u128::from(radius);
    let identity: Entries = [1, 0, 0, 1];
    if times_generator(&identity, 1, limit).is_none() {
        return Err(OrbitError::InvalidInput(format!("radius {radius} is below the norm of M_1 (sqrt 7)")));
    }
    let kids = |m: &Entries| -> Vec<Entries> { (1..=alphabet).map_while(|b| times_generator(m, b, limit)).collect() };
    let mut seen: HashSet<Entries> = HashSet::new();
    let mut frontier = kids(&identity);
    while !frontier.is_empty() {
        seen.extend(frontier.iter().copied());
        if seen.len() > cap {
            return Err(OrbitError::BudgetExceeded { cap });
        }
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let found: Vec<Vec<Entries>> = chunk.par_iter().map(kids).collect();
            next.extend(found.into_iter().flatten().filter(|m| !seen.contains(m)));
            if seen.len() + next.len() > cap {
                return Err(OrbitError::BudgetExceeded { cap });
            }
        }
        frontier = next;
    }
    let mut compact: Vec<Entries> = seen.into_iter().collect();
    compact.sort_unstable();
    let elements = compact.into_iter().map(|[a, b, c, d]| Mat2::new(a, b, c, d)).collect();
    Ok(SemigroupBall { alphabet, radius, norm_kind: NormKind::Frobenius, elements })
}

/// Every product of between 1 and `max_len` generators.
pub fn words_up_to(alphabet: u64, max_len: usize) -> Vec<Mat2> {
    let gens: Vec<Mat2> = (1..=alphabet).map(generator_matrix).collect();
    let mut out = Vec::new();
    let mut level = vec![Mat2::identity()];
    for _ in 0..max_len {
        level = level.iter().flat_map(|m| gens.iter().map(move |g| m * g)).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// `{<v1 gamma, v2>}` over the given elements, sorted and deduplicated.
pub fn numerators<'a>(
    elements: impl IntoIterator<Item = &'a Mat2>,
    v1: (i64, i64),
    v2: (i64, i64),
) -> BTreeSet<BigInt> {
    elements.into_iter().map(|m| pairing(m, v1, v2)).collect()
}

/// `<v1 gamma, v2>` for row vector `v1` and column vector `v2`.
pub fn pairing(m: &Mat2, v1: (i64, i64), v2: (i64, i64)) -> BigInt {
    let (x, y) = (BigInt::from(v1.0), BigInt::from(v1.1));
    let (r0, r1) = m.left_mul_row((&x, &y));
    r0 * v2.0 + r1 * v2.1
}

/// Multiplicity of `n` among `<v1 gamma, v2>`.
pub fn representation_number(ball: &SemigroupBall, n: &BigInt, v1: (i64, i64), v2: (i64, i64)) -> usize {
    ball.elements.iter().filter(|m| pairing(m, v1, v2) == *n).count()
}

/// All representation numbers at once.
pub fn representation_counts(ball: &SemigroupBall, v1: (i64, i64), v2: (i64, i64)) -> BTreeMap<BigInt, usize> {
    let mut counts = BTreeMap::new();
    for m in &ball.elements {
        *counts.entry(pairing(m, v1, v2)).or_insert(0) += 1;
    }
    counts
}

/// `|SL(2, Z/qZ)| = q^3 prod_{p | q} (1 - p^-2)`.
pub fn sl2_order(q: u64) -> u64 {
    let mut order = q * q * q;
    let mut rest = q;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            order = order / (p * p) * (p * p - 1);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        order = order / (rest * rest) * (rest * rest - 1);
    }
    order
}

pub type ResidueMatrix = [u32; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceQuotient {
    pub alphabet: u64,
    pub q: u32,
    pub reached: HashSet<ResidueMatrix>,
    pub full: bool,
}

fn mul_mod(x: &ResidueMatrix, y: &ResidueMatrix, q: u32) -> ResidueMatrix {
    let q = q as u64;
    let [a, b, c, d] = x.map(u64::from);
    let [e, f, g, h] = y.map(u64::from);
    [
        ((a * e + b * g) % q) as u32,
        ((a * f + b * h) % q) as u32,
        ((c * e + d * g) % q) as u32,
        ((c * f + d * h) % q) as u32,
    ]
}

fn reduce(m: &Mat2, q: u32) -> ResidueMatrix {
    let r = |x: &BigInt| x.mod_floor(&BigInt::from(q)).to_u32().expect("residue fits");
    [r(&m.a), r(&m.b), r(&m.c), r(&m.d)]
}

impl CongruenceQuotient {
    pub fn contains_identity(&self) -> bool {
        self.reached.contains(&[1 % self.q, 0, 0, 1 % self.q])
    }

    /// Closed under right multiplication by every generator.
    pub fn is_closed(&self) -> bool {
        let gens = self.generators();
        self.reached.iter().all(|m| gens.iter().all(|g| self.reached.contains(&mul_mod(m, g, self.q))))
    }

    pub fn generators(&self) -> Vec<ResidueMatrix> {
        (1..=self.alphabet).map(|b| reduce(&generator_matrix(b), self.q)).collect()
    }

    /// Residues `<v1 gamma, v2> mod q` over the reached set.
    pub fn residues(&self, v1: (i64, i64), v2: (i64, i64)) -> BTreeSet<u32> {
        let q = self.q as i64;
        self.reached
            .iter()
            .map(|&[a, b, c, d]| {
                let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
                let r0 = v1.0 * a + v1.1 * c;
                let r1 = v1.0 * b + v1.1 * d;
                (r0 * v2.0 + r1 * v2.1).rem_euclid(q) as u32
            })
            .collect()
    }
}

/// Semigroup closure of the generators modulo `q`.
pub fn congruence_quotient(alphabet: u64, q: u32) -> Result<CongruenceQuotient, OrbitError> {
    if q < 2 || alphabet == 0 {
        return Err(OrbitError::InvalidInput(format!("need q >= 2 and A >= 1, got q={q}, A={alphabet}")));
    }
    let gens: Vec<ResidueMatrix> = (1..=alphabet).map(|b| reduce(&generator_matrix(b), q)).collect();
    let mut reached: HashSet<ResidueMatrix> = gens.iter().copied().collect();
    let mut work: Vec<ResidueMatrix> = reached.iter().copied().collect();
    while let Some(m) = work.pop() {
        for g in &gens {
            let p = mul_mod(&m, g, q);
            if reached.insert(p) {
                work.push(p);
            }
        }
    }
    let full = reached.len() as u64 == sl2_order(q as u64);
    Ok(CongruenceQuotient { alphabet, q, reached, full })
}

/// `(t + u) / (t + 2u)`, the image of `t/u` under prepending a leading 1.
pub fn sumset_witness(t: &BigInt, u: &BigInt) -> Result<Rational, OrbitError> {
    if !t.is_positive() || t >= u || !t.gcd(u).is_one() {
        return Err(OrbitError::InvalidInput(format!("need coprime 0 < t < u, got {t}/{u}")));
    }
    let num = (t + u).to_biguint().expect("positive");
    let den = (t + u + u).to_biguint().expect("positive");
    Rational::new(num, den).map_err(|e| OrbitError::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{to_alternating, Representation};

    const NUM: ((i64, i64), (i64, i64)) = ((0, 1), (1, 0));

    #[test]
    fn tiny_ball() {
        let b = ball(1, 3, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(b.elements, vec![generator_matrix(1)]);
        assert!(matches!(ball(1, 2, DEFAULT_ELEMENT_CAP), Err(OrbitError::InvalidInput(_))));
        assert!(matches!(ball(3, 1000, 10), Err(OrbitError::BudgetExceeded { cap: 10 })));
    }

    #[test]
    fn single_generator_grows_logarithmically() {
        // M_1^k has norm about phi^(2k)
        for n in [10u64, 100, 10_000, 1_000_000] {
            let b = ball(1, n, DEFAULT_ELEMENT_CAP).unwrap();
            let expected = (0..).take_while(|&k| {
                let m = words_up_to(1, k + 1).pop().unwrap();
                m.frobenius_norm_sq() <= BigInt::from(n) * n
            });
            assert_eq!(b.len(), expected.count());
        }
    }

    #[test]
    fn short_words_numerators() {
        let words = words_up_to(1, 3);
        let nums: Vec<BigInt> = numerators(&words, NUM.0, NUM.1).into_iter().collect();
        assert_eq!(nums, vec![BigInt::from(1), BigInt::from(3), BigInt::from(8)]);
        let dens: Vec<BigInt> = numerators(&words, (0, 1), (0, 1)).into_iter().collect();
        assert_eq!(dens, vec![BigInt::from(2), BigInt::from(5), BigInt::from(13)]);
    }

    #[test]
    fn membership_matches_alternating_forms() {
        let b = ball(2, 500, DEFAULT_ELEMENT_CAP).unwrap();
        for m in &b.elements {
            let (t, u) = m.bottom_row();
            let x = Rational::new(t.to_biguint().unwrap(), u.to_biguint().unwrap()).unwrap();
            let Representation::Alternating(acf) = to_alternating(&x).unwrap() else {
                panic!("{m} has no alternating form")
            };
            assert!(acf.digits().iter().all(|&d| d <= 2));
            let prod = acf.digits().iter().rev().fold(Mat2::identity(), |p, &d| &p * &generator_matrix(d));
            assert_eq!(&prod, m);
        }
    }

    #[test]
    fn representation_sums_to_ball_size() {
        let b = ball(2, 300, DEFAULT_ELEMENT_CAP).unwrap();
        let counts = representation_counts(&b, NUM.0, NUM.1);
        assert_eq!(counts.values().sum::<usize>(), b.len());
        assert_eq!(representation_number(&b, &BigInt::from(2), NUM.0, NUM.1), 0);
        for (n, &c) in &counts {
            assert_eq!(representation_number(&b, n, NUM.0, NUM.1), c);
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(sl2_order(2), 6);
        assert_eq!(sl2_order(5), 120);
        assert_eq!(sl2_order(4), 48);
        assert_eq!(sl2_order(12), 12 * 12 * 12 * 3 / 4 * 8 / 9);
    }

    #[test]
    fn congruence_examples() {
        let c = congruence_quotient(2, 2).unwrap();
        assert!(c.full && c.reached.len() == 6 && c.contains_identity() && c.is_closed());
        let c = congruence_quotient(2, 5).unwrap();
        assert!(c.full && c.reached.len() == 120);
        assert_eq!(c.residues(NUM.0, NUM.1).len(), 5);
    }

    #[test]
    fn sumset_examples() {
        let w = sumset_witness(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(w.to_string(), "3/5");
        let w = sumset_witness(&BigInt::from(4), &BigInt::from(11)).unwrap();
        assert_eq!(w.to_string(), "15/26");
        assert!(to_alternating(&w).unwrap().alternating().is_some());
        assert!(sumset_witness(&BigInt::from(2), &BigInt::from(4)).is_err());
    }
}

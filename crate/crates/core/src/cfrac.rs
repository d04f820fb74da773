//! Exact continued fractions, the alternating form `[b1,1,b2,1,...,bm,1]`,
//! and the 2x2 integer matrices that encode them.
//!
//! Matrix convention: row vectors multiply on the right. The alternating
//! fraction with digits `b1..bm` is the bottom row of
//! `M_{bm} * ... * M_{b1}`, i.e. `(t, u) = (0, 1) * M_{bm} * ... * M_{b1}`.
//! Note the reversal: the *last* digit is the *leftmost* factor.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("partial quotients after a0 must be >= 1")]
    ZeroQuotient,
    #[error("alternating form needs at least one digit, all >= 1")]
    InvalidAlternating,
    #[error("value {0} is outside the open interval (0, 1)")]
    OutOfUnitInterval(String),
    #[error("partial quotient {0} does not fit in 64 bits")]
    QuotientOverflow(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A nonnegative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    #[serde(with = "crate::decimal")]
    num: BigUint,
    #[serde(with = "crate::decimal")]
    den: BigUint,
}

impl Rational {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self, CfError> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(CfError::ZeroDenominator);
        }
        // gcd(0, d) = d, so zero normalizes to 0/1
        let g = num.gcd(&den);
        Ok(Rational { num: &num / &g, den: &den / &g })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self, CfError> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_in_open_unit_interval(&self) -> bool {
        !self.num.is_zero() && self.num < self.den
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.num.to_f64().unwrap_or(f64::INFINITY);
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
        // Shift both down so the ratio survives conversion.
        let shift = self.num.bits().max(self.den.bits()).saturating_sub(1000);
        let n = (&self.num >> shift).to_f64().unwrap_or(0.0);
        let d = (&self.den >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = CfError;

    /// Parses `"t/u"` or a bare integer `"t"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let body = s.trim();
        match body.split_once('/') {
            Some((n, d)) => {
                let num = parse_uint(n.trim(), lead)?;
                let dpos = lead + n.len() + 1;
                let den = parse_uint(d.trim(), dpos + (d.len() - d.trim_start().len()))?;
                Rational::new(num, den).map_err(|_| CfError::Parse { pos: dpos, msg: "zero denominator".into() })
            }
            None => Rational::new(parse_uint(body, lead)?, 1u32),
        }
    }
}

fn parse_uint(s: &str, pos: usize) -> Result<BigUint, CfError> {
    if s.is_empty() {
        return Err(CfError::Parse { pos, msg: "expected an integer".into() });
    }
    if let Some(i) = s.find(|c: char| !c.is_ascii_digit()) {
        return Err(CfError::Parse {
            pos: pos + i,
            msg: format!("unexpected character {:?}", s[i..].chars().next().unwrap_or(' ')),
        });
    }
    s.parse::<BigUint>().map_err(|e| CfError::Parse { pos, msg: e.to_string() })
}

/// `[a0; a1, ..., al]` with every `a_i >= 1` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CfExpansion {
    a0: BigUint,
    quotients: Vec<BigUint>,
}

impl CfExpansion {
    pub fn new(a0: impl Into<BigUint>, quotients: Vec<BigUint>) -> Result<Self, CfError> {
        if quotients.iter().any(Zero::is_zero) {
            return Err(CfError::ZeroQuotient);
        }
        Ok(CfExpansion { a0: a0.into(), quotients })
    }

    pub fn from_u64s(a0: u64, quotients: &[u64]) -> Result<Self, CfError> {
        Self::new(BigUint::from(a0), quotients.iter().map(|&q| BigUint::from(q)).collect())
    }

    pub fn a0(&self) -> &BigUint {
        &self.a0
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// Canonical means the final quotient is at least 2, except for the
    /// expansion `[a0; 1]` of a value whose shorter form would be empty.
    pub fn is_canonical(&self) -> bool {
        match self.quotients.as_slice() {
            [] => true,
            [single] => !single.is_one() || self.a0.is_zero(),
            [.., last] => !last.is_one(),
        }
    }

    /// The other expansion of the same value: `[..., a] <-> [..., a-1, 1]`.
    ///
    /// Returns `None` when the rewrite would produce a zero quotient, which
    /// only happens for expansions with no quotients at all.
    pub fn with_trailing_one(&self) -> Option<CfExpansion> {
        let mut q = self.quotients.clone();
        let last = q.pop()?;
        if last.is_one() {
            // [..., b, 1] -> [..., b + 1]
            match q.pop() {
                Some(prev) => q.push(prev + 1u32),
                None => return Some(CfExpansion { a0: &self.a0 + 1u32, quotients: q }),
            }
        } else {
            q.push(last - 1u32);
            q.push(BigUint::one());
        }
        Some(CfExpansion { a0: self.a0.clone(), quotients: q })
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.a0)?;
        for (i, q) in self.quotients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CfExpansion {
    type Err = CfError;

    /// Accepts `"[a0;a1,a2,...]"` or the `a0 = 0` shorthand `"[a1,a2,...]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (items, semicolon) = parse_bracket_list(s)?;
        let mut nums = Vec::with_capacity(items.len());
        for (pos, text) in &items {
            nums.push(parse_uint(text, *pos)?);
        }
        let (a0, quotients) = match semicolon {
            Some(_) => {
                let mut it = nums.into_iter();
                let a0 = it.next().ok_or(CfError::Parse { pos: 1, msg: "missing a0".into() })?;
                (a0, it.collect::<Vec<_>>())
            }
            None => (BigUint::zero(), nums),
        };
        let offset = usize::from(semicolon.is_some());
        if let Some(i) = quotients.iter().position(Zero::is_zero) {
            return Err(CfError::Parse { pos: items[i + offset].0, msg: "partial quotient must be >= 1".into() });
        }
        Ok(CfExpansion { a0, quotients })
    }
}

impl From<CfExpansion> for String {
    fn from(cf: CfExpansion) -> String {
        cf.to_string()
    }
}

impl TryFrom<String> for CfExpansion {
    type Error = CfError;

    fn try_from(s: String) -> Result<Self, CfError> {
        s.parse()
    }
}

/// Splits `[x;y,z]` into positioned tokens. Returns the position of `;` if present.
fn parse_bracket_list(s: &str) -> Result<(Vec<(usize, String)>, Option<usize>), CfError> {
    let open = s
        .find(|c: char| !c.is_whitespace())
        .filter(|&i| s[i..].starts_with('['))
        .ok_or(CfError::Parse { pos: 0, msg: "expected '['".into() })?;
    let close = s.rfind(']').ok_or(CfError::Parse { pos: s.len(), msg: "expected ']'".into() })?;
    if !s[close + 1..].trim().is_empty() {
        return Err(CfError::Parse { pos: close + 1, msg: "trailing characters".into() });
    }
    let inner = &s[open + 1..close];
    let base = open + 1;
    let mut semicolon = None;
    let mut items = Vec::new();
    let mut start = 0;
    for (i, c) in inner.char_indices().chain(std::iter::once((inner.len(), ','))) {
        if c == ',' || c == ';' {
            if c == ';' {
                if semicolon.is_some() || !items.is_empty() {
                    return Err(CfError::Parse { pos: base + i, msg: "misplaced ';'".into() });
                }
                semicolon = Some(base + i);
            }
            let tok = &inner[start..i];
            let lead = tok.len() - tok.trim_start().len();
            let tok = tok.trim();
            if tok.is_empty() {
                if !(i == inner.len() && items.is_empty() && semicolon.is_none() && inner.trim().is_empty()) {
                    return Err(CfError::Parse { pos: base + start + lead, msg: "empty entry".into() });
                }
            } else {
                items.push((base + start + lead, tok.to_string()));
            }
            start = i + 1;
        }
    }
    Ok((items, semicolon))
}

/// Digits `b1..bm` of `[b1,1,b2,1,...,bm,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternatingCf {
    bs: Vec<u64>,
}

impl AlternatingCf {
    pub fn new(bs: Vec<u64>) -> Result<Self, CfError> {
        if bs.is_empty() || bs.contains(&0) {
            return Err(CfError::InvalidAlternating);
        }
        Ok(AlternatingCf { bs })
    }

    pub fn digits(&self) -> &[u64] {
        &self.bs
    }

    pub fn len(&self) -> usize {
        self.bs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bs.is_empty()
    }

    /// The full quotient list `b1, 1, b2, 1, ..., bm, 1`.
    pub fn to_expansion(&self) -> CfExpansion {
        let quotients = self.bs.iter().flat_map(|&b| [BigUint::from(b), BigUint::one()]).collect();
        CfExpansion { a0: BigUint::zero(), quotients }
    }

    /// `[1, b1, ..., bm]`, whose value is `(t+u)/(t+2u)`.
    pub fn prepend_one(&self) -> AlternatingCf {
        let mut bs = Vec::with_capacity(self.bs.len() + 1);
        bs.push(1);
        bs.extend_from_slice(&self.bs);
        AlternatingCf { bs }
    }
}

impl fmt::Display for AlternatingCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.bs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b},1")?;
        }
        f.write_str("]")
    }
}

impl FromStr for AlternatingCf {
    type Err = CfError;

    /// Accepts either the full pattern `"[b1,1,b2,1,...]"` or a bare digit
    /// list `"b1,b2,..."`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim_start().starts_with('[') {
            let (items, semicolon) = parse_bracket_list(s)?;
            if let Some(pos) = semicolon {
                return Err(CfError::Parse { pos, msg: "alternating form takes no ';'".into() });
            }
            if items.is_empty() || items.len() % 2 != 0 {
                return Err(CfError::Parse {
                    pos: s.len(),
                    msg: "alternating form needs an even, nonzero number of entries".into(),
                });
            }
            let mut bs = Vec::new();
            for pair in items.chunks(2) {
                let b = parse_u64(&pair[0].1, pair[0].0)?;
                let one = parse_u64(&pair[1].1, pair[1].0)?;
                if one != 1 {
                    return Err(CfError::Parse { pos: pair[1].0, msg: "expected 1".into() });
                }
                if b == 0 {
                    return Err(CfError::Parse { pos: pair[0].0, msg: "digit must be >= 1".into() });
                }
                bs.push(b);
            }
            return Ok(AlternatingCf { bs });
        }
        let mut bs = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            let lead = tok.len() - tok.trim_start().len();
            let b = parse_u64(tok.trim(), offset + lead)?;
            if b == 0 {
                return Err(CfError::Parse { pos: offset + lead, msg: "digit must be >= 1".into() });
            }
            bs.push(b);
            offset += tok.len() + 1;
        }
        Ok(AlternatingCf { bs })
    }
}

fn parse_u64(s: &str, pos: usize) -> Result<u64, CfError> {
    let n = parse_uint(s, pos)?;
    n.to_u64().ok_or(CfError::Parse { pos, msg: "value too large".into() })
}

/// Outcome of asking for the alternating form of a fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Alternating(AlternatingCf),
    NotRepresentable,
}

impl Representation {
    pub fn alternating(&self) -> Option<&AlternatingCf> {
        match self {
            Representation::Alternating(a) => Some(a),
            Representation::NotRepresentable => None,
        }
    }
}

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    #[serde(with = "crate::decimal")]
    pub a: BigInt,
    #[serde(with = "crate::decimal")]
    pub b: BigInt,
    #[serde(with = "crate::decimal")]
    pub c: BigInt,
    #[serde(with = "crate::decimal")]
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `[[0, 1], [1, a]]`, one partial quotient.
    pub fn quotient(a: impl Into<BigInt>) -> Self {
        Mat2::new(0, 1, 1, a)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn bottom_row(&self) -> (&BigInt, &BigInt) {
        (&self.c, &self.d)
    }

    pub fn is_nonnegative(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_positive())
    }

    pub fn frobenius_norm_sq(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    /// Row vector times matrix.
    pub fn left_mul_row(&self, row: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
        (row.0 * &self.a + row.1 * &self.c, row.0 * &self.b + row.1 * &self.d)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn cf_eval(cf: &CfExpansion) -> Rational {
    // Fold from the tail: value = a_i + 1/value.
    let mut num = BigUint::one();
    let mut den = BigUint::zero();
    for q in cf.quotients.iter().rev() {
        let next = q * &num + &den;
        den = num;
        num = next;
    }
    // Now quotients evaluate to num/den (or infinity when empty); add a0.
    let (n, d) = if cf.quotients.is_empty() { (cf.a0.clone(), BigUint::one()) } else { (&cf.a0 * &num + &den, num) };
    Rational::new(n, d).expect("denominator of a continued fraction is positive")
}

/// Canonical expansion by the Euclidean algorithm.
pub fn cf_expand(x: &Rational) -> CfExpansion {
    let (mut n, mut d) = (x.num.clone(), x.den.clone());
    let (a0, r) = n.div_rem(&d);
    let mut quotients = Vec::new();
    n = d;
    d = r;
    while !d.is_zero() {
        let (q, r) = n.div_rem(&d);
        quotients.push(q);
        n = d;
        d = r;
    }
    CfExpansion { a0, quotients }
}

/// Finds `bs` with `x = [b1,1,...,bm,1]`, if it exists.
///
/// Both expansions of `x` are tried; a match needs even length with every
/// even-indexed quotient equal to 1.
pub fn to_alternating(x: &Rational) -> Result<Representation, CfError> {
    if !x.is_in_open_unit_interval() {
        return Err(CfError::OutOfUnitInterval(x.to_string()));
    }
    let canonical = cf_expand(x);
    let candidates = [Some(canonical.clone()), canonical.with_trailing_one()];
    for cf in candidates.into_iter().flatten() {
        if let Some(bs) = match_alternating(&cf)? {
            return Ok(Representation::Alternating(AlternatingCf { bs }));
        }
    }
    Ok(Representation::NotRepresentable)
}

fn match_alternating(cf: &CfExpansion) -> Result<Option<Vec<u64>>, CfError> {
    let q = &cf.quotients;
    if !cf.a0.is_zero() || q.is_empty() || q.len() % 2 != 0 {
        return Ok(None);
    }
    if q.chunks(2).any(|p| !p[1].is_one()) {
        return Ok(None);
    }
    q.chunks(2)
        .map(|p| p[0].to_u64().ok_or_else(|| CfError::QuotientOverflow(p[0].to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// `(t, u) = (0, 1) * M_{bm} * ... * M_{b1}`, returned as `t/u`.
pub fn alternating_eval(acf: &AlternatingCf) -> Rational {
    let (t, u) = alternating_pair(acf);
    Rational::new(t, u).expect("alternating denominators are positive")
}

/// The unreduced bottom row of the generator product. Always coprime.
pub fn alternating_pair(acf: &AlternatingCf) -> (BigUint, BigUint) {
    let mut t = BigUint::zero();
    let mut u = BigUint::one();
    // (t, u) * [[1, b], [1, b+1]] = (t + u, b t + (b+1) u)
    for &b in acf.bs.iter().rev() {
        let nt = &t + &u;
        let nu = &t * b + &u * (b + 1);
        t = nt;
        u = nu;
    }
    (t, u)
}

/// `M_b = [[0,1],[1,1]] * [[0,1],[1,b]] = [[1, b], [1, b+1]]`.
pub fn generator_matrix(b: u64) -> Mat2 {
    &Mat2::quotient(1) * &Mat2::quotient(b)
}

/// Checks `[[1,0],[1,1]] * [[1,k],[0,1]] == [[0,1],[1,1]] * [[0,1],[1,k]]`.
pub fn commutation_identity_check(k: u64) -> bool {
    let lhs = &Mat2::new(1, 0, 1, 1) * &Mat2::new(1, k, 0, 1);
    let rhs = &Mat2::quotient(1) * &Mat2::quotient(k);
    lhs == rhs
}

//! Exhaustive spanning-tree censuses of small connected simple planar graphs:
//! the sets `T(n)`, the minimal vertex counts `alpha(t)`, and related
//! quantities.

mod canon;
pub mod planarity;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfrac::{to_alternating, AlternatingCf, Rational};
use crate::treegraph::{build_trimmed, GraphError, Multigraph};

pub use canon::{SmallGraph, MAX_VERTICES};

/// Default vertex cap for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} is outside the enumerable range 1..={cap}")]
    OutOfRange { n: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("construction disagreed with determinant: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub planar: bool,
    /// The value set, ascending.
    pub values: Vec<BigUint>,
    /// Number of isomorphism classes examined (connected, simple, and planar
    /// when `planar` is set).
    pub graph_count: usize,
    /// Smallest-code graph attaining each value.
    pub witnesses: BTreeMap<BigUint, Multigraph>,
}

/// Serialized form: `{n, planar, values: [decimal strings], count}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub planar: bool,
    pub values: Vec<String>,
    pub count: usize,
}

impl CensusResult {
    pub fn contains(&self, t: &BigUint) -> bool {
        self.values.binary_search(t).is_ok()
    }

    pub fn to_record(&self) -> CensusRecord {
        CensusRecord {
            n: self.n,
            planar: self.planar,
            values: self.values.iter().map(|v| v.to_string()).collect(),
            count: self.graph_count,
        }
    }
}

/// Isomorphism classes of all simple graphs, grown one vertex at a time.
#[derive(Debug, Default)]
pub struct Census {
    levels: Vec<Vec<SmallGraph>>,
    results: HashMap<(usize, bool), CensusResult>,
}

impl Census {
    pub fn new() -> Self {
        Census { levels: vec![vec![SmallGraph::empty(0)]], results: HashMap::new() }
    }

    /// All isomorphism classes of simple graphs on `n` vertices, by ascending code.
    pub fn classes(&mut self, n: usize) -> &[SmallGraph] {
        assert!(n <= MAX_VERTICES);
        while self.levels.len() <= n {
            let prev = self.levels.last().expect("level 0 seeded");
            let k = self.levels.len() - 1;
            let found: Vec<(u64, SmallGraph)> = prev
                .par_iter()
                .flat_map_iter(|g| (0u16..1 << k).map(move |mask| g.with_vertex(mask).canonical()))
                .collect();
            let mut unique: BTreeMap<u64, SmallGraph> = BTreeMap::new();
            for (code, g) in found {
                unique.entry(code).or_insert(g);
            }
            self.levels.push(unique.into_values().collect());
        }
        &self.levels[n]
    }

    pub fn enumerate(&mut self, n: usize, planar_only: bool, cap: usize) -> Result<&CensusResult, CensusError> {
        let cap = cap.min(MAX_VERTICES);
        if n == 0 || n > cap {
            return Err(CensusError::OutOfRange { n, cap });
        }
        if !self.results.contains_key(&(n, planar_only)) {
            let classes = self.classes(n).to_vec();
            let hits: Vec<(BigUint, SmallGraph)> = classes
                .par_iter()
                .filter(|g| g.is_connected())
                .filter_map(|g| {
                    let m = g.to_multigraph();
                    (!planar_only || m.is_planar()).then(|| (m.tau(), *g))
                })
                .collect();
            let graph_count = hits.len();
            let mut witnesses = BTreeMap::new();
            for (t, g) in hits {
                witnesses.entry(t).or_insert_with(|| g.to_multigraph());
            }
            let values = witnesses.keys().cloned().collect();
            self.results
                .insert((n, planar_only), CensusResult { n, planar: planar_only, values, graph_count, witnesses });
        }
        Ok(&self.results[&(n, planar_only)])
    }

    /// Seeds a previously computed result (for example from an on-disk cache).
    pub fn insert(&mut self, result: CensusResult) {
        self.results.insert((result.n, result.planar), result);
    }
}

fn shared() -> &'static Mutex<Census> {
    static CENSUS: OnceLock<Mutex<Census>> = OnceLock::new();
    CENSUS.get_or_init(|| Mutex::new(Census::new()))
}

/// `T(n)` (with `planar_only`) or its non-planar analogue, for `1 <= n <= cap`.
pub fn enumerate_t(n: usize, planar_only: bool, cap: usize) -> Result<CensusResult, CensusError> {
    let mut census = shared().lock().unwrap_or_else(|e| e.into_inner());
    census.enumerate(n, planar_only, cap).cloned()
}

/// Best vertex count reachable by trimming the alternating construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionBound {
    pub vertices: usize,
    pub digits: AlternatingCf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaEntry {
    pub t: BigUint,
    pub alpha: usize,
    pub witness: Multigraph,
    pub construction_bound: Option<ConstructionBound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaOutcome {
    Exact(AlphaEntry),
    /// Not attained on at most `searched_up_to` vertices.
    Unknown {
        t: BigUint,
        searched_up_to: usize,
        construction_bound: Option<ConstructionBound>,
    },
}

impl AlphaOutcome {
    pub fn alpha(&self) -> Option<usize> {
        match self {
            AlphaOutcome::Exact(e) => Some(e.alpha),
            AlphaOutcome::Unknown { .. } => None,
        }
    }

    pub fn construction_bound(&self) -> Option<&ConstructionBound> {
        match self {
            AlphaOutcome::Exact(e) => e.construction_bound.as_ref(),
            AlphaOutcome::Unknown { construction_bound, .. } => construction_bound.as_ref(),
        }
    }
}

/// Smallest trimmed construction with `t` spanning trees. Only `u` in
/// `(t, 2t]` is scanned: the trimmed size ignores the first digit, and first
/// digit 1 is exactly that range.
pub fn construction_bound(t: &BigUint) -> Option<ConstructionBound> {
    let t_small = t.to_u64()?;
    let mut best: Option<ConstructionBound> = None;
    for u in t_small + 1..=2 * t_small {
        if t_small.gcd(&u) != 1 {
            continue;
        }
        let x = Rational::from_u64(t_small, u).ok()?;
        let Ok(rep) = to_alternating(&x) else { continue };
        let Some(acf) = rep.alternating() else { continue };
        if acf.len() < 2 {
            continue;
        }
        let vertices: u64 = acf.digits()[1..].iter().sum::<u64>() + 2;
        if best.as_ref().is_none_or(|b| (vertices as usize) < b.vertices) {
            best = Some(ConstructionBound { vertices: vertices as usize, digits: acf.clone() });
        }
    }
    best
}

/// `alpha(t) = min{n : t in T(n)}`, searched exhaustively up to `search_cap`.
pub fn alpha(t: &BigUint, search_cap: usize) -> Result<AlphaOutcome, CensusError> {
    if *t < BigUint::from(3u32) {
        return Err(CensusError::InvalidInput(format!("alpha needs t >= 3, got {t}")));
    }
    let bound = construction_bound(t);
    let cap = search_cap.min(MAX_VERTICES);
    for n in 1..=cap {
        let res = enumerate_t(n, true, cap)?;
        if let Some(w) = res.witnesses.get(t) {
            return Ok(AlphaOutcome::Exact(AlphaEntry {
                t: t.clone(),
                alpha: n,
                witness: w.clone(),
                construction_bound: bound,
            }));
        }
    }
    // Nothing up to the cap, so a construction on cap + 1 vertices is optimal.
    if let Some(b) = bound.as_ref().filter(|b| b.vertices == cap + 1) {
        let report = build_trimmed(&b.digits)?;
        if report.tau != *t {
            return Err(CensusError::Inconsistent(format!("trimmed {} has tau {}", b.digits, report.tau)));
        }
        return Ok(AlphaOutcome::Exact(AlphaEntry {
            t: t.clone(),
            alpha: b.vertices,
            witness: report.graph,
            construction_bound: bound,
        }));
    }
    Ok(AlphaOutcome::Unknown { t: t.clone(), searched_up_to: cap, construction_bound: bound })
}

/// Natural log of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `s(G) = ln tau(G) / |V(G)|`.
pub fn tree_spectrum(g: &Multigraph) -> Result<f64, CensusError> {
    let tau = g.tau();
    if tau.is_zero() {
        return Err(CensusError::Disconnected);
    }
    Ok(ln_biguint(&tau) / g.vertex_count() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthWitness {
    pub alphabet: u64,
    pub budget: usize,
    /// Trimmed graphs built.
    pub built: usize,
    pub values: BTreeSet<BigUint>,
    pub count: usize,
    /// `count^(1/budget)`.
    pub rate: f64,
}

/// Digit strings `b2..bm` (m >= 2) with entries in `1..=a` and sum at most `max_sum`.
pub fn bounded_tails(a: u64, max_sum: u64) -> Vec<Vec<u64>> {
    fn go(a: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for b in 1..=a.min(left) {
            cur.push(b);
            go(a, left - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Distinct spanning-tree counts of trimmed constructions with digits at
/// most `a` and at most `budget` vertices.
pub fn growth_witness(a: u64, budget: usize) -> Result<GrowthWitness, CensusError> {
    if a == 0 || budget < 3 {
        return Err(CensusError::InvalidInput(format!("need A >= 1 and budget >= 3, got A={a}, budget={budget}")));
    }
    let tails = bounded_tails(a, budget as u64 - 2);
    let taus: Vec<Result<BigUint, CensusError>> = tails
        .par_iter()
        .map(|tail| {
            let mut digits = vec![1];
            digits.extend_from_slice(tail);
            let acf = AlternatingCf::new(digits).map_err(|e| CensusError::InvalidInput(e.to_string()))?;
            let r = build_trimmed(&acf)?;
            if r.tau != r.t || r.vertex_count > budget {
                return Err(CensusError::Inconsistent(format!("{acf}: tau {} vs t {}", r.tau, r.t)));
            }
            Ok(r.tau)
        })
        .collect();
    let mut values = BTreeSet::new();
    for t in taus {
        values.insert(t?);
    }
    let count = values.len();
    Ok(GrowthWitness {
        alphabet: a,
        budget,
        built: tails.len(),
        rate: (count as f64).powf(1.0 / budget as f64),
        count,
        values,
    })
}

//! Exhaustive verification of the alternating construction.
//!
//! Every digit string with a given sum is built incrementally in a depth-first
//! walk (strings sharing their innermost digits share the partial graph), and
//! at each leaf the determinant counts are compared with the generator
//! product. Sums are processed in increasing order so that a deadline leaves
//! a clean "complete up to sum S" statement.
//!
//! A second pass deletes the marked edge, peels pendant trees, and checks the
//! spanning-tree count and size of what remains.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sparse::Workspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    /// Digits `b1..bm`.
    pub digits: Vec<u64>,
    pub expected: (u128, u128),
    pub found: Option<(i128, i128)>,
    pub vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_sum: u64,
    /// Largest `S` such that every string with digit sum at most `S` was checked.
    pub completed_sum: u64,
    pub cases: u64,
    pub failures: Vec<SweepFailure>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn complete(&self) -> bool {
        self.completed_sum == self.max_sum
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimFailure {
    pub digits: Vec<u64>,
    pub expected_tau: u128,
    pub found_tau: Option<i128>,
    pub expected_vertices: usize,
    pub vertices: usize,
}

/// Result of [`sweep_trimmed`]; only strings with at least two digits count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimSweepReport {
    pub max_sum: u64,
    pub completed_sum: u64,
    pub cases: u64,
    pub failures: Vec<TrimFailure>,
    /// Spanning-tree counts seen, keyed by vertex count, for small graphs.
    pub small_values: BTreeMap<usize, BTreeSet<u128>>,
    pub elapsed: Duration,
}

impl TrimSweepReport {
    pub fn complete(&self) -> bool {
        self.completed_sum == self.max_sum
    }
}

/// Vertex counts up to this are recorded in [`TrimSweepReport::small_values`].
pub const SMALL_VERTICES: usize = 7;

/// Graph built by applying digits innermost first.
struct Partial {
    n: usize,
    edges: Vec<(usize, usize)>,
    marked: usize,
    t: u128,
    u: u128,
    digits: Vec<u64>,
}

impl Partial {
    fn new() -> Self {
        Partial { n: 2, edges: vec![(0, 1)], marked: 0, t: 0, u: 1, digits: Vec::new() }
    }

    /// Mirrors `MarkedGraph::attach_path`; returns what `undo` needs.
    fn apply(&mut self, k: u64) -> (usize, usize, usize, u128, u128) {
        let saved = (self.n, self.edges.len(), self.marked, self.t, self.u);
        let ku = k as usize;
        let (x, y) = self.edges[self.marked];
        let n = self.n;
        self.marked = self.edges.len();
        self.edges.push((x, n));
        for i in 0..ku - 1 {
            self.edges.push((n + i, n + i + 1));
        }
        let last = n + ku - 1;
        self.edges.push((y.min(last), y.max(last)));
        self.n += ku;
        let kk = k as u128;
        (self.t, self.u) = (self.t + self.u, kk * self.t + (kk + 1) * self.u);
        self.digits.push(k);
        saved
    }

    fn undo(&mut self, saved: (usize, usize, usize, u128, u128)) {
        (self.n, _, self.marked, self.t, self.u) = saved;
        self.edges.truncate(saved.1);
        self.digits.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Marked,
    Trimmed,
}

/// Buffers for deleting the marked edge and peeling leaves.
#[derive(Default)]
struct Peel {
    deg: Vec<usize>,
    alive: Vec<bool>,
    edge_alive: Vec<bool>,
    incident: Vec<Vec<usize>>,
    stack: Vec<usize>,
    index: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Peel {
    /// Compacts `G - e` with pendant trees removed into `self.edges`;
    /// returns the remaining vertex count.
    fn run(&mut self, n: usize, edges: &[(usize, usize)], skip: usize) -> usize {
        self.deg.clear();
        self.deg.resize(n, 0);
        self.alive.clear();
        self.alive.resize(n, true);
        self.edge_alive.clear();
        self.edge_alive.resize(edges.len(), true);
        self.edge_alive[skip] = false;
        self.incident.resize_with(n.max(self.incident.len()), Vec::new);
        for list in &mut self.incident[..n] {
            list.clear();
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if i != skip {
                self.deg[u] += 1;
                self.deg[v] += 1;
                self.incident[u].push(i);
                self.incident[v].push(i);
            }
        }
        let mut remaining = n;
        self.stack.clear();
        self.stack.extend((0..n).filter(|&v| self.deg[v] == 1));
        while let Some(v) = self.stack.pop() {
            if !self.alive[v] || self.deg[v] != 1 || remaining <= 1 {
                continue;
            }
            self.alive[v] = false;
            remaining -= 1;
            for &ei in &self.incident[v] {
                if self.edge_alive[ei] {
                    self.edge_alive[ei] = false;
                    let (a, b) = edges[ei];
                    let w = if a == v { b } else { a };
                    self.deg[w] -= 1;
                    if self.deg[w] == 1 {
                        self.stack.push(w);
                    }
                }
            }
            self.deg[v] = 0;
        }
        self.index.clear();
        let mut next = 0;
        for v in 0..n {
            self.index.push(next);
            if self.alive[v] {
                next += 1;
            }
        }
        self.edges.clear();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if self.edge_alive[i] {
                self.edges.push((self.index[u], self.index[v]));
            }
        }
        remaining
    }
}

struct Walk<'a> {
    mode: Mode,
    target: u64,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    cases: u64,
    failures: Vec<SweepFailure>,
    trim_failures: Vec<TrimFailure>,
    small_values: BTreeMap<usize, BTreeSet<u128>>,
    peel: Peel,
    small: Workspace<i64>,
    wide: Workspace<i128>,
}

impl<'a> Walk<'a> {
    fn new(mode: Mode, target: u64, deadline: Option<Instant>, stop: &'a AtomicBool) -> Self {
        Walk {
            mode,
            target,
            deadline,
            stop,
            cases: 0,
            failures: Vec::new(),
            trim_failures: Vec::new(),
            small_values: BTreeMap::new(),
            peel: Peel::default(),
            small: Workspace::default(),
            wide: Workspace::default(),
        }
    }
}

impl Walk<'_> {
    fn visit(&mut self, g: &mut Partial, sum: u64) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if sum == self.target {
            match self.mode {
                Mode::Marked => self.check(g),
                Mode::Trimmed if g.digits.len() >= 2 => self.check_trimmed(g),
                Mode::Trimmed => {}
            }
            return;
        }
        for k in 1..=self.target - sum {
            let saved = g.apply(k);
            self.visit(g, sum + k);
            g.undo(saved);
        }
    }

    fn tick(&mut self) {
        self.cases += 1;
        if self.cases % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn check_trimmed(&mut self, g: &Partial) {
        self.tick();
        let n = self.peel.run(g.n, &g.edges, g.marked);
        let edges = &self.peel.edges;
        let found = match self.small.tau_newest_first(n, edges) {
            Some(t) => Some(t as i128),
            None => self.wide.tau_newest_first(n, edges),
        };
        // the outermost digit is the last one applied
        let expected_vertices = (self.target - g.digits[g.digits.len() - 1]) as usize + 2;
        let ok = found.is_some_and(|t| t >= 0 && t as u128 == g.t) && n == expected_vertices;
        if ok && n <= SMALL_VERTICES {
            self.small_values.entry(n).or_default().insert(g.t);
        }
        if !ok {
            self.trim_failures.push(TrimFailure {
                digits: g.digits.iter().rev().copied().collect(),
                expected_tau: g.t,
                found_tau: found,
                expected_vertices,
                vertices: n,
            });
        }
    }

    fn check(&mut self, g: &Partial) {
        self.tick();
        let found = match self.small.stv_newest_first(g.n, &g.edges, g.marked) {
            Some((d, c)) => Some((d as i128, c as i128)),
            None => self.wide.stv_newest_first(g.n, &g.edges, g.marked),
        };
        let vertices_ok = g.n as u64 == self.target + 2;
        let ok = found.is_some_and(|(d, c)| d >= 0 && c >= 0 && d as u128 == g.t && c as u128 == g.u);
        if !(ok && vertices_ok) {
            self.failures.push(SweepFailure {
                digits: g.digits.iter().rev().copied().collect(),
                expected: (g.t, g.u),
                found,
                vertices: g.n,
            });
        }
    }
}

/// Runs one walk per first digit for every target sum in increasing order.
fn run_walks(mode: Mode, max_sum: u64, deadline: Option<Instant>, mut absorb: impl FnMut(Walk<'_>)) -> u64 {
    let stop = AtomicBool::new(false);
    let mut completed = 0;
    for target in 1..=max_sum {
        let walks: Vec<Walk<'_>> = (1..=target)
            .into_par_iter()
            .map(|first| {
                let mut walk = Walk::new(mode, target, deadline, &stop);
                let mut g = Partial::new();
                let saved = g.apply(first);
                walk.visit(&mut g, first);
                g.undo(saved);
                walk
            })
            .collect();
        walks.into_iter().for_each(&mut absorb);
        if stop.load(Ordering::Relaxed) {
            break;
        }
        completed = target;
    }
    completed
}

/// Checks `(tau(G - e), tau(G / e)) = (t, u)` and `|V| = sum + 2` for every
/// digit string with sum at most `max_sum`, stopping at `deadline` if given.
pub fn sweep_constructions(max_sum: u64, deadline: Option<Instant>) -> SweepReport {
    let start = Instant::now();
    let mut report = SweepReport { max_sum, completed_sum: 0, cases: 0, failures: Vec::new(), elapsed: Duration::ZERO };
    report.completed_sum = run_walks(Mode::Marked, max_sum, deadline, |w| {
        report.cases += w.cases;
        report.failures.extend(w.failures);
    });
    report.elapsed = start.elapsed();
    report
}

/// For every string `b1..bm` with `m >= 2` and digit sum at most `max_sum`:
/// deleting the marked edge and peeling leaves gives a graph with
/// `tau = t` on `b2 + ... + bm + 2` vertices.
pub fn sweep_trimmed(max_sum: u64, deadline: Option<Instant>) -> TrimSweepReport {
    let start = Instant::now();
    let mut report = TrimSweepReport {
        max_sum,
        completed_sum: 0,
        cases: 0,
        failures: Vec::new(),
        small_values: BTreeMap::new(),
        elapsed: Duration::ZERO,
    };
    report.completed_sum = run_walks(Mode::Trimmed, max_sum, deadline, |w| {
        report.cases += w.cases;
        report.failures.extend(w.trim_failures);
        for (n, vals) in w.small_values {
            report.small_values.entry(n).or_default().extend(vals);
        }
    });
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::AlternatingCf;
    use crate::treegraph::construct_marked;

    #[test]
    fn incremental_graph_matches_construction() {
        let digits = [3u64, 1, 4, 1, 5];
        let mut g = Partial::new();
        for &d in digits.iter().rev() {
            g.apply(d);
        }
        let m = construct_marked(&AlternatingCf::new(digits.to_vec()).unwrap()).unwrap();
        assert_eq!(g.edges, m.graph().edges());
        assert_eq!(g.marked, m.marked_index());
        assert_eq!(g.digits.iter().rev().copied().collect::<Vec<_>>(), digits);
    }

    #[test]
    fn small_sweep_is_clean() {
        let r = sweep_constructions(12, None);
        assert!(r.complete());
        assert_eq!(r.cases, (1 << 12) - 1);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn small_trimmed_sweep_matches_build_trimmed() {
        use crate::treegraph::build_trimmed;
        let r = sweep_trimmed(10, None);
        assert!(r.complete() && r.failures.is_empty());
        // strings of sum S with at least two digits: 2^(S-1) - 1
        assert_eq!(r.cases, (1..=10u64).map(|s| (1 << (s - 1)) - 1).sum::<u64>());
        let four: Vec<u128> = r.small_values[&4].iter().copied().collect();
        assert_eq!(four, vec![4, 8]);
        let t = build_trimmed(&AlternatingCf::new(vec![5, 2, 1, 3]).unwrap()).unwrap();
        assert_eq!(t.vertex_count, 8);
        assert_eq!(t.tau, t.t);
    }

    #[test]
    fn deadline_in_the_past_stops_early() {
        let r = sweep_constructions(30, Some(Instant::now()));
        assert!(!r.complete());
        assert!(r.completed_sum < 30);
    }
}

//! Marked multigraphs, exact spanning-tree counts, and the path/parallel
//! operations that turn an alternating continued fraction into a planar
//! graph with a prescribed spanning-tree vector.

mod det;
mod io;
mod sparse;
pub mod sweep;

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::planarity::is_planar;
use crate::cfrac::{alternating_pair, AlternatingCf};

pub use det::{bareiss_det, laplacian, spanning_tree_count};
pub use io::{parse_edge_list, to_dot, to_edge_list};
pub use sparse::{laplacian_entries, leading_minors, stv_by_elimination, tau_by_elimination, Workspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    LoopPresent(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("marked edge index {index} out of range for {len} edges")]
    InvalidMarked { index: usize, len: usize },
    #[error("trimming a single-digit construction leaves no cycle (m = 1)")]
    DegenerateTrim,
    #[error("digit {0} too large to build a graph from")]
    DigitTooLarge(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Loopless multigraph on vertices `0..n`. Edges are stored as `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopPresent(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph { n, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Multigraph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Multigraph { n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.edges.push((0, n - 1));
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn is_simple(&self) -> bool {
        let e = self.sorted_edges();
        e.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_planar(&self) -> bool {
        is_planar(self)
    }

    /// Number of spanning trees (0 when disconnected, 1 for a single vertex).
    pub fn tau(&self) -> BigUint {
        let count = match tau_by_elimination(self.n, &self.edges) {
            Some(t) => BigInt::from(t),
            None => spanning_tree_count(self.n, &self.edges),
        };
        nonneg(count)
    }

    /// Same count by dense Bareiss elimination over big integers.
    pub fn tau_dense(&self) -> BigUint {
        nonneg(spanning_tree_count(self.n, &self.edges))
    }

    pub fn delete_edge(&self, index: usize) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Multigraph { n: self.n, edges }
    }

    /// Merges the endpoints of edge `index` and drops the loops this creates.
    /// Parallel edges survive.
    pub fn contract_edge(&self, index: usize) -> Multigraph {
        let (keep, gone) = self.edges[index];
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Multigraph { n: self.n - 1, edges }
    }

    /// Repeatedly removes degree-1 vertices; spanning-tree count is unchanged.
    pub fn trim_leaves(&self) -> Multigraph {
        let mut alive = vec![true; self.n];
        let mut edge_alive = vec![true; self.edges.len()];
        let mut deg = self.degrees();
        let mut incident = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut remaining = self.n;
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] || deg[v] != 1 || remaining <= 1 {
                continue;
            }
            alive[v] = false;
            remaining -= 1;
            for &ei in &incident[v] {
                if edge_alive[ei] {
                    edge_alive[ei] = false;
                    let (a, b) = self.edges[ei];
                    let w = if a == v { b } else { a };
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
            deg[v] = 0;
        }
        let mut index = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if alive[v] {
                index[v] = next;
                next += 1;
            }
        }
        let edges =
            self.edges.iter().zip(&edge_alive).filter(|(_, &a)| a).map(|(&(u, v), _)| (index[u], index[v])).collect();
        Multigraph { n: next, edges }
    }

    /// Identifies vertex `a` of `self` with vertex `b` of `other`. Spanning
    /// tree counts multiply.
    pub fn wedge(&self, a: usize, other: &Multigraph, b: usize) -> Multigraph {
        let map = |w: usize| -> usize {
            match w.cmp(&b) {
                std::cmp::Ordering::Equal => a,
                std::cmp::Ordering::Less => self.n + w,
                std::cmp::Ordering::Greater => self.n + w - 1,
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| {
            let (x, y) = (map(u), map(v));
            (x.min(y), x.max(y))
        }));
        Multigraph { n: self.n + other.n - 1, edges }
    }
}

/// A multigraph with one distinguished edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedGraph {
    graph: Multigraph,
    marked: usize,
}

/// `(tau(G - e), tau(G / e))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanningTreeVector {
    #[serde(with = "crate::decimal")]
    pub del: BigUint,
    #[serde(with = "crate::decimal")]
    pub con: BigUint,
}

impl SpanningTreeVector {
    pub fn new(del: impl Into<BigUint>, con: impl Into<BigUint>) -> Self {
        SpanningTreeVector { del: del.into(), con: con.into() }
    }

    pub fn total(&self) -> BigUint {
        &self.del + &self.con
    }

    pub fn gcd(&self) -> BigUint {
        self.del.gcd(&self.con)
    }

    /// Row vector times `[[a, b], [c, d]]`.
    pub fn times(&self, a: u64, b: u64, c: u64, d: u64) -> SpanningTreeVector {
        SpanningTreeVector { del: &self.del * a + &self.con * c, con: &self.del * b + &self.con * d }
    }
}

impl MarkedGraph {
    pub fn new(graph: Multigraph, marked: usize) -> Result<Self, GraphError> {
        if marked >= graph.edges.len() {
            return Err(GraphError::InvalidMarked { index: marked, len: graph.edges.len() });
        }
        Ok(MarkedGraph { graph, marked })
    }

    /// `P1`: one marked edge between two vertices.
    pub fn single_edge() -> Self {
        MarkedGraph { graph: Multigraph { n: 2, edges: vec![(0, 1)] }, marked: 0 }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    pub fn marked_index(&self) -> usize {
        self.marked
    }

    pub fn marked_edge(&self) -> (usize, usize) {
        self.graph.edges[self.marked]
    }

    pub fn deleted(&self) -> Multigraph {
        self.graph.delete_edge(self.marked)
    }

    pub fn contracted(&self) -> Multigraph {
        self.graph.contract_edge(self.marked)
    }

    /// One sparse elimination of `L(G - e)`; dense fallback on overflow.
    pub fn stv(&self) -> SpanningTreeVector {
        match stv_by_elimination(self.graph.n, &self.graph.edges, self.marked) {
            Some((del, con)) => SpanningTreeVector { del: nonneg(BigInt::from(del)), con: nonneg(BigInt::from(con)) },
            None => self.stv_dense(),
        }
    }

    /// Deletion and contraction counted separately by dense Bareiss.
    pub fn stv_dense(&self) -> SpanningTreeVector {
        SpanningTreeVector { del: self.deleted().tau_dense(), con: self.contracted().tau_dense() }
    }

    /// `f^k`: the marked edge `(x, y)`, `x < y`, becomes the path
    /// `x - n - (n+1) - ... - (n+k-1) - y`; the edge `(x, n)` is marked.
    pub fn subdivide(&self, k: usize) -> MarkedGraph {
        let (x, y) = self.marked_edge();
        let n = self.graph.n;
        let mut edges = self.graph.edges.clone();
        edges[self.marked] = (x, n);
        for i in 0..k.saturating_sub(1) {
            edges.push((n + i, n + i + 1));
        }
        if k > 0 {
            edges.push((y.min(n + k - 1), y.max(n + k - 1)));
        } else {
            edges[self.marked] = (x, y);
        }
        MarkedGraph { graph: Multigraph { n: n + k, edges }, marked: self.marked }
    }

    /// `g^k`: adds `k` copies of the marked edge and marks the last copy.
    pub fn parallel(&self, k: usize) -> MarkedGraph {
        let e = self.marked_edge();
        let mut edges = self.graph.edges.clone();
        edges.extend(std::iter::repeat(e).take(k));
        let marked = if k == 0 { self.marked } else { edges.len() - 1 };
        MarkedGraph { graph: Multigraph { n: self.graph.n, edges }, marked }
    }

    /// `h^k = f^k . g`: a new path with `k + 1` edges between the marked
    /// edge's endpoints, with one path edge marked.
    pub fn attach_path(&self, k: usize) -> MarkedGraph {
        self.parallel(1).subdivide(k)
    }
}

/// Result of [`build_from_alternating`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphBuildReport {
    pub graph: MarkedGraph,
    /// Numerator and denominator predicted by the generator product.
    #[serde(with = "crate::decimal")]
    pub t: BigUint,
    #[serde(with = "crate::decimal")]
    pub u: BigUint,
    /// Determinant counts `tau(G - e)` and `tau(G / e)`.
    #[serde(with = "crate::decimal")]
    pub tau_del: BigUint,
    #[serde(with = "crate::decimal")]
    pub tau_con: BigUint,
    pub vertex_count: usize,
    pub simple: bool,
    pub planar: bool,
}

impl GraphBuildReport {
    pub fn consistent(&self) -> bool {
        self.t == self.tau_del && self.u == self.tau_con
    }
}

/// Result of [`build_trimmed`]: the marked edge deleted and tails removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimmedReport {
    pub graph: Multigraph,
    #[serde(with = "crate::decimal")]
    pub t: BigUint,
    #[serde(with = "crate::decimal")]
    pub tau: BigUint,
    pub vertex_count: usize,
    pub simple: bool,
    pub planar: bool,
}

fn digit(b: u64) -> Result<usize, GraphError> {
    usize::try_from(b).ok().filter(|&k| k <= 1 << 24).ok_or(GraphError::DigitTooLarge(b))
}

/// `h^{b1} h^{b2} ... h^{bm} (P1)`, innermost `h^{bm}` applied first.
pub fn construct_marked(bs: &AlternatingCf) -> Result<MarkedGraph, GraphError> {
    let mut g = MarkedGraph::single_edge();
    for &b in bs.digits().iter().rev() {
        g = g.attach_path(digit(b)?);
    }
    Ok(g)
}

pub fn build_from_alternating(bs: &AlternatingCf) -> Result<GraphBuildReport, GraphError> {
    let graph = construct_marked(bs)?;
    let (t, u) = alternating_pair(bs);
    let stv = graph.stv();
    let g = graph.graph();
    Ok(GraphBuildReport {
        t,
        u,
        tau_del: stv.del,
        tau_con: stv.con,
        vertex_count: g.vertex_count(),
        simple: g.is_simple(),
        planar: g.is_planar(),
        graph,
    })
}

pub fn build_trimmed(bs: &AlternatingCf) -> Result<TrimmedReport, GraphError> {
    if bs.len() < 2 {
        return Err(GraphError::DegenerateTrim);
    }
    let graph = construct_marked(bs)?.deleted().trim_leaves();
    let (t, _) = alternating_pair(bs);
    Ok(TrimmedReport {
        t,
        tau: graph.tau(),
        vertex_count: graph.vertex_count(),
        simple: graph.is_simple(),
        planar: graph.is_planar(),
        graph,
    })
}

fn nonneg(x: BigInt) -> BigUint {
    x.to_biguint().expect("Laplacian minors are nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acf(bs: &[u64]) -> AlternatingCf {
        AlternatingCf::new(bs.to_vec()).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn tau_examples() {
        assert_eq!(Multigraph::cycle(3).tau(), big(3));
        assert_eq!(Multigraph::complete(4).tau(), big(16));
        assert_eq!(Multigraph::path(5).tau(), big(1));
        assert_eq!(Multigraph::new(1, []).unwrap().tau(), big(1));
        let disconnected = Multigraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(disconnected.tau(), big(0));
        assert!(matches!(Multigraph::new(3, [(1, 1)]), Err(GraphError::LoopPresent(1))));
    }

    #[test]
    fn stv_examples() {
        assert_eq!(MarkedGraph::single_edge().stv(), SpanningTreeVector::new(0u32, 1u32));
        for i in 0..3 {
            let tri = MarkedGraph::new(Multigraph::cycle(3), i).unwrap();
            assert_eq!(tri.stv(), SpanningTreeVector::new(1u32, 2u32));
        }
        for i in 0..6 {
            let k4 = MarkedGraph::new(Multigraph::complete(4), i).unwrap();
            assert_eq!(k4.stv(), SpanningTreeVector::new(8u32, 8u32));
        }
    }

    #[test]
    fn subdivide_examples() {
        let tri = MarkedGraph::new(Multigraph::cycle(3), 0).unwrap();
        let c4 = tri.subdivide(1);
        assert_eq!(c4.graph().vertex_count(), 4);
        assert_eq!(c4.graph().edge_count(), 4);
        assert_eq!(c4.graph().tau(), big(4));
        assert_eq!(c4.stv(), SpanningTreeVector::new(1u32, 3u32));
        assert!(c4.graph().is_simple());

        let p = MarkedGraph::single_edge().subdivide(2);
        assert_eq!(p.graph().edge_count(), 3);
        assert_eq!(p.stv(), SpanningTreeVector::new(0u32, 1u32));
    }

    #[test]
    fn parallel_examples() {
        let tri = MarkedGraph::new(Multigraph::cycle(3), 0).unwrap();
        let g = tri.parallel(1);
        assert_eq!(g.stv(), SpanningTreeVector::new(3u32, 2u32));
        assert!(!g.graph().is_simple());
        let g3 = tri.parallel(3);
        assert_eq!(g3.graph().vertex_count(), 3);
        assert_eq!(g3.graph().edge_count(), 6);
        assert_eq!(g3.stv().gcd(), tri.stv().gcd());
    }

    #[test]
    fn attach_path_examples() {
        let tri = MarkedGraph::single_edge().attach_path(1);
        assert_eq!(tri.graph().vertex_count(), 3);
        assert_eq!(tri.stv(), SpanningTreeVector::new(1u32, 2u32));
        let g = MarkedGraph::single_edge().attach_path(2).attach_path(2);
        assert_eq!(g.stv(), SpanningTreeVector::new(4u32, 11u32));
        assert!(g.graph().is_simple());
    }

    #[test]
    fn build_examples() {
        let r = build_from_alternating(&acf(&[4, 2, 1, 3])).unwrap();
        assert_eq!(r.vertex_count, 12);
        assert!(r.consistent() && r.simple && r.planar);

        let r = build_from_alternating(&acf(&[2, 2])).unwrap();
        assert_eq!((r.tau_del.clone(), r.tau_con.clone(), r.vertex_count), (big(4), big(11), 6));

        let r = build_from_alternating(&acf(&[1])).unwrap();
        assert_eq!((r.tau_del.clone(), r.tau_con.clone(), r.vertex_count), (big(1), big(2), 3));
        assert_eq!(r.graph.graph().sorted_edges(), Multigraph::cycle(3).sorted_edges());
    }

    #[test]
    fn trimmed_examples() {
        let r = build_trimmed(&acf(&[2, 2])).unwrap();
        assert_eq!((r.tau.clone(), r.vertex_count), (big(4), 4));
        let r = build_trimmed(&acf(&[1, 1, 1])).unwrap();
        assert_eq!((r.tau.clone(), r.vertex_count), (big(8), 4));
        assert!(r.simple && r.planar);
        assert_eq!(build_trimmed(&acf(&[5])), Err(GraphError::DegenerateTrim));
    }

    #[test]
    fn trimming_keeps_tau() {
        // triangle with two pendant paths
        let g = Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (0, 5)]).unwrap();
        let t = g.trim_leaves();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.tau(), g.tau());
        // a tree collapses to one vertex
        assert_eq!(Multigraph::path(6).trim_leaves().vertex_count(), 1);
    }

    #[test]
    fn contraction_drops_loops_keeps_parallels() {
        let g = Multigraph::new(3, [(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap();
        let c = g.contract_edge(0);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.sorted_edges(), vec![(0, 1), (0, 1)]);
    }

    #[test]
    fn wedge_multiplies() {
        let a = Multigraph::cycle(3);
        let b = Multigraph::complete(4);
        let w = a.wedge(2, &b, 1);
        assert_eq!(w.vertex_count(), 6);
        assert_eq!(w.tau(), big(48));
        assert!(w.is_connected());
    }
}

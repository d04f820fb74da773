//! Small simple graphs as adjacency bitmasks, with a canonical labelling.

use crate::treegraph::Multigraph;

/// Hard limit on vertices: codes pack the upper triangle into a `u64`.
pub const MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        SmallGraph { n: n as u8, adj: [0; MAX_VERTICES] }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.has_edge(i, j)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let full: u16 = ((1u32 << n) - 1) as u16;
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == full
    }

    /// Adds vertex `n` joined to every vertex in the bitmask.
    pub fn with_vertex(&self, neighbours: u16) -> SmallGraph {
        let n = self.n();
        let mut g = *self;
        g.n += 1;
        for v in 0..n {
            if neighbours >> v & 1 == 1 {
                g.add_edge(v, n);
            }
        }
        g
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::new(self.n(), self.edges()).expect("simple graph is loopless")
    }

    fn code_under(&self, perm: &[usize]) -> u64 {
        let n = perm.len();
        let mut code = 0u64;
        for i in 0..n {
            let row = self.adj[perm[i]];
            for &pj in &perm[i + 1..] {
                code = code << 1 | (row >> pj & 1) as u64;
            }
        }
        code
    }

    /// Minimum upper-triangle code over all labellings that list vertices in
    /// nondecreasing degree order, with the graph in that labelling. Equal
    /// for isomorphic graphs.
    pub fn canonical(&self) -> (u64, SmallGraph) {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.degree(v));
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || self.degree(order[i]) != self.degree(order[start]) {
                blocks.push((start, i));
                start = i;
            }
        }
        let mut best = (u64::MAX, order.clone());
        permute_blocks(&mut order, &blocks, 0, &mut |perm| {
            let c = self.code_under(perm);
            if c < best.0 {
                best = (c, perm.to_vec());
            }
        });
        let perm = best.1;
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = SmallGraph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        (best.0, g)
    }
}

fn permute_blocks(order: &mut [usize], blocks: &[(usize, usize)], b: usize, visit: &mut impl FnMut(&[usize])) {
    if b == blocks.len() {
        visit(order);
        return;
    }
    let (lo, hi) = blocks[b];
    heap_permute(order, lo, hi - lo, blocks, b, visit);
}

// Heap's algorithm on order[lo..hi], recursing into the next block at each leaf.
fn heap_permute(
    order: &mut [usize],
    lo: usize,
    k: usize,
    blocks: &[(usize, usize)],
    b: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if k <= 1 {
        permute_blocks(order, blocks, b + 1, visit);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(order, lo, k - 1, blocks, b, visit);
        if k % 2 == 0 {
            order.swap(lo + i, lo + k - 1);
        } else {
            order.swap(lo, lo + k - 1);
        }
    }
    heap_permute(order, lo, k - 1, blocks, b, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn relabelled_graphs_share_a_code() {
        let mut a = SmallGraph::empty(5);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)] {
            a.add_edge(u, v);
        }
        let mut b = SmallGraph::empty(5);
        for (u, v) in [(4, 3), (3, 1), (1, 0), (0, 4), (2, 1)] {
            b.add_edge(u, v);
        }
        assert_eq!(a.canonical().0, b.canonical().0);
        let (code, canon) = a.canonical();
        assert_eq!(canon.canonical().0, code);
        assert_eq!(canon.edge_count(), 5);
    }

    #[test]
    fn all_permutations_visited() {
        let mut order: Vec<usize> = (0..5).collect();
        let mut seen = HashSet::new();
        permute_blocks(&mut order, &[(0, 2), (2, 5)], 0, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 2 * 6);
    }

    #[test]
    fn connectivity() {
        let mut g = SmallGraph::empty(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        assert!(!g.is_connected());
        g.add_edge(1, 2);
        assert!(g.is_connected());
        assert!(SmallGraph::empty(1).is_connected());
    }
}

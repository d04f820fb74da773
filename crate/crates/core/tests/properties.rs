//! Marked-graph identities against a brute-force spanning-tree count.

use num_bigint::BigUint;
use proptest::prelude::*;
use treefrac::treegraph::{MarkedGraph, Multigraph, SpanningTreeVector};

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    p[x] = r;
    r
}

/// Counts (n-1)-edge subsets that form a spanning tree.
fn brute_tau(n: usize, edges: &[(usize, usize)]) -> u64 {
    if n <= 1 {
        return n as u64;
    }
    if edges.len() < n - 1 {
        return 0;
    }
    fn go(n: usize, edges: &[(usize, usize)], start: usize, chosen: &mut Vec<usize>) -> u64 {
        if chosen.len() == n - 1 {
            let mut p: Vec<usize> = (0..n).collect();
            for &i in chosen.iter() {
                let (a, b) = edges[i];
                let (ra, rb) = (find(&mut p, a), find(&mut p, b));
                if ra == rb {
                    return 0;
                }
                p[ra] = rb;
            }
            return 1;
        }
        let need = n - 1 - chosen.len();
        (start..=edges.len().saturating_sub(need))
            .map(|i| {
                chosen.push(i);
                let c = go(n, edges, i + 1, chosen);
                chosen.pop();
                c
            })
            .sum()
    }
    go(n, edges, 0, &mut Vec::new())
}

/// `(tau(G - e), tau(G / e))` by brute force, contracting by relabelling.
fn brute_stv(n: usize, edges: &[(usize, usize)], marked: usize) -> (u64, u64) {
    let mut rest = edges.to_vec();
    let (x, y) = rest.remove(marked);
    let del = brute_tau(n, &rest);
    let relabel = |v: usize| {
        let v = if v == y { x } else { v };
        if v > y {
            v - 1
        } else {
            v
        }
    };
    let con_edges: Vec<(usize, usize)> =
        rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).filter(|(a, b)| a != b).collect();
    (del, brute_tau(n - 1, &con_edges))
}

/// Connected loopless multigraphs: a random spanning tree plus extra edges.
fn marked_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, usize)> {
    (2usize..=6).prop_flat_map(|n| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=5);
        (Just(n), tree, extra, any::<prop::sample::Index>()).prop_map(|(n, tree, extra, m)| {
            let mut edges: Vec<(usize, usize)> =
                tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))));
            let marked = m.index(edges.len());
            (n, edges, marked)
        })
    })
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn deletion_contraction((n, edges, marked) in marked_graph()) {
        let g = MarkedGraph::new(Multigraph::new(n, edges.clone()).unwrap(), marked).unwrap();
        let (del, con) = brute_stv(n, &edges, marked);
        prop_assert_eq!(g.stv(), SpanningTreeVector::new(del, con));
        prop_assert_eq!(g.stv_dense(), SpanningTreeVector::new(del, con));
        let tau = brute_tau(n, &edges);
        prop_assert_eq!(tau, del + con);
        prop_assert_eq!(g.graph().tau(), big(tau));
        prop_assert_eq!(g.graph().tau_dense(), big(tau));
    }

    #[test]
    fn subdivision_and_parallel_act_by_matrices((n, edges, marked) in marked_graph(), k in 1usize..=4) {
        let g = MarkedGraph::new(Multigraph::new(n, edges).unwrap(), marked).unwrap();
        let v = g.stv();
        prop_assume!(v.del > BigUint::from(0u32) && v.con > BigUint::from(0u32));
        let kk = k as u64;

        let f = g.subdivide(k);
        prop_assert_eq!(f.graph().vertex_count(), n + k);
        prop_assert_eq!(f.graph().edge_count(), g.graph().edge_count() + k);
        let fv = f.stv();
        prop_assert_eq!(&fv, &v.times(1, kk, 0, 1));
        prop_assert_eq!(fv.gcd(), v.gcd());

        let p = g.parallel(k);
        prop_assert_eq!(p.graph().vertex_count(), n);
        prop_assert_eq!(p.graph().edge_count(), g.graph().edge_count() + k);
        let pv = p.stv();
        prop_assert_eq!(&pv, &v.times(1, 0, kk, 1));
        prop_assert_eq!(pv.gcd(), v.gcd());
    }
}

#[test]
fn brute_oracle_sanity() {
    // Cayley: n^(n-2)
    for n in 2..=6usize {
        let k = Multigraph::complete(n);
        assert_eq!(brute_tau(n, k.edges()), (n as u64).pow(n as u32 - 2));
    }
    assert_eq!(brute_stv(3, &[(0, 1), (1, 2), (0, 2)], 0), (1, 2));
}

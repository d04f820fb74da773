//! Planarity by Kuratowski: reduce, then search for a subdivided K5 or K3,3.
//!
//! Deleting vertices of degree at most one and smoothing degree-two vertices
//! both preserve planarity. Whatever survives has minimum degree three and is
//! usually tiny; on it we route internally disjoint branch paths by
//! backtracking. Exponential in the worst case, fine for the graph sizes the
//! census and the construction checks produce.

use std::collections::BTreeSet;

use crate::treegraph::Multigraph;

pub fn is_planar(g: &Multigraph) -> bool {
    let core = reduce(g);
    let k = core.len();
    if k <= 4 {
        return true;
    }
    let m: usize = core.iter().map(|s| s.len()).sum::<usize>() / 2;
    if m > 3 * k - 6 {
        return false;
    }
    !has_kuratowski_subdivision(&core)
}

/// Simple adjacency of the reduced core, relabelled to `0..k`.
fn reduce(g: &Multigraph) -> Vec<BTreeSet<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        alive[v] = false;
        adj[v].clear();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        stack.extend(nbrs);
    }
    let mut index = vec![usize::MAX; n];
    let mut k = 0;
    for v in 0..n {
        if alive[v] {
            index[v] = k;
            k += 1;
        }
    }
    (0..n).filter(|&v| alive[v]).map(|v| adj[v].iter().map(|&w| index[w]).collect()).collect()
}

fn has_kuratowski_subdivision(adj: &[BTreeSet<usize>]) -> bool {
    let n = adj.len();
    let deg4: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 4).collect();
    for five in combinations(&deg4, 5) {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (five[i], five[j])).collect();
        if routable(adj, &five, &pairs) {
            return true;
        }
    }
    let deg3: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    for six in combinations(&deg3, 6) {
        // side A always contains six[0]; pick its two partners
        for rest in combinations(&six[1..], 2) {
            let a = [six[0], rest[0], rest[1]];
            let b: Vec<usize> = six.iter().copied().filter(|v| !a.contains(v)).collect();
            let pairs: Vec<(usize, usize)> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect();
            if routable(adj, &six, &pairs) {
                return true;
            }
        }
    }
    false
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Can every pair be joined by a path whose interior avoids the branch
/// vertices and every other path?
fn routable(adj: &[BTreeSet<usize>], branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut used = vec![false; adj.len()];
    for &b in branch {
        used[b] = true;
    }
    // direct edges first: they cost no interior vertices
    let mut order: Vec<(usize, usize)> = pairs.to_vec();
    order.sort_by_key(|&(a, b)| !adj[a].contains(&b));
    route(adj, &order, 0, &mut used)
}

fn route(adj: &[BTreeSet<usize>], pairs: &[(usize, usize)], idx: usize, used: &mut [bool]) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (a, b) = pairs[idx];
    if adj[a].contains(&b) && route(adj, pairs, idx + 1, used) {
        return true;
    }
    // paths with at least one interior vertex
    let mut path = Vec::new();
    extend(adj, pairs, idx, a, b, used, &mut path)
}

fn extend(
    adj: &[BTreeSet<usize>],
    pairs: &[(usize, usize)],
    idx: usize,
    at: usize,
    target: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    for &w in &adj[at] {
        if w == target {
            if !path.is_empty() && route(adj, pairs, idx + 1, used) {
                return true;
            }
            continue;
        }
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        let found = extend(adj, pairs, idx, w, target, used, path);
        path.pop();
        used[w] = false;
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Multigraph {
        Multigraph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn small_and_complete() {
        for n in 1..=4 {
            assert!(is_planar(&Multigraph::complete(n)));
        }
        assert!(!is_planar(&Multigraph::complete(5)));
        assert!(!is_planar(&Multigraph::complete(6)));
        assert!(!is_planar(&k33()));
        let k5_minus = Multigraph::complete(5).delete_edge(0);
        assert!(is_planar(&k5_minus));
    }

    #[test]
    fn subdivisions_are_found() {
        // K3,3 with one edge subdivided twice
        let mut edges: Vec<(usize, usize)> = k33().edges().to_vec();
        let (a, b) = edges.remove(0);
        edges.extend([(a, 6), (6, 7), (7, b)]);
        assert!(!is_planar(&Multigraph::new(8, edges).unwrap()));
        // Petersen graph contains a K3,3 subdivision
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        let petersen = Multigraph::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert!(!is_planar(&petersen));
    }

    #[test]
    fn planar_families() {
        // wheel W6, prism, octahedron
        let wheel = Multigraph::new(7, (0..6).map(|i| (i, (i + 1) % 6)).chain((0..6).map(|i| (i, 6)))).unwrap();
        assert!(is_planar(&wheel));
        let prism =
            Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(is_planar(&prism));
        let octa =
            Multigraph::new(6, (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| j != i + 3))
                .unwrap();
        assert!(is_planar(&octa));
        // octahedron plus one antipodal edge is maximal planar plus one: nonplanar
        let mut e = octa.edges().to_vec();
        e.push((0, 3));
        assert!(!is_planar(&Multigraph::new(6, e).unwrap()));
    }
}

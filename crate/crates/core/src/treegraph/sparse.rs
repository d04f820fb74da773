//! Sparse Bareiss elimination for Laplacian-type matrices.
//!
//! Pivots are taken symmetrically in minimum-degree order, so the k-th pivot
//! recorded is the leading principal minor on the first k eliminated
//! vertices. Rows not touched by a pivot are rescaled lazily: after step k an
//! untouched row equals its value at step s times `p_k / p_s`, so the
//! multiplier is applied only when the row is next needed.
//!
//! Arithmetic is checked; `None` signals overflow. Callers try `i64`, then
//! `i128`, then fall back to the dense big-integer routine.

/// Integer type the elimination runs in.
pub trait Entry: Copy + Default + Eq + Ord + std::fmt::Debug + Into<i128> {
    const ZERO: Self;
    const ONE: Self;
    fn from_i64(x: i64) -> Option<Self>;
    fn mul(self, o: Self) -> Option<Self>;
    fn sub(self, o: Self) -> Option<Self>;
    fn add(self, o: Self) -> Option<Self>;
    fn div(self, o: Self) -> Self;
}

macro_rules! entry_impl {
    ($t:ty) => {
        impl Entry for $t {
            const ZERO: Self = 0;
            const ONE: Self = 1;
            fn from_i64(x: i64) -> Option<Self> {
                Self::try_from(x).ok()
            }
            fn mul(self, o: Self) -> Option<Self> {
                self.checked_mul(o)
            }
            fn sub(self, o: Self) -> Option<Self> {
                self.checked_sub(o)
            }
            fn add(self, o: Self) -> Option<Self> {
                self.checked_add(o)
            }
            fn div(self, o: Self) -> Self {
                self / o
            }
        }
    };
}
entry_impl!(i64);
entry_impl!(i128);

/// Leading principal minors `m_0 = 1, m_1, ..., m_n` of a symmetric positive
/// semidefinite matrix, eliminating vertices outside `tail` first (fewest
/// off-diagonal entries first) and then `tail` in the given order.
///
/// Once a minor vanishes all later ones do too (Fischer's inequality), and
/// the rest of the list is filled with zeros.
pub fn leading_minors(n: usize, entries: &[(usize, usize, i64)], tail: &[usize]) -> Option<Vec<i128>> {
    let mut ws = Workspace::<i128>::default();
    ws.load(n, entries)?;
    let mut in_tail = vec![false; n];
    for &t in tail {
        in_tail[t] = true;
    }
    let mut tail_iter = tail.iter();
    ws.run(|rows, active| {
        (0..rows.len())
            .filter(|&v| active[v] && !in_tail[v])
            .min_by_key(|&v| rows[v].len())
            .or_else(|| tail_iter.next().copied())
            .expect("tail lists the remaining vertices")
    })?;
    Some(std::mem::take(&mut ws.minors))
}

/// Reusable buffers for repeated eliminations.
#[derive(Debug, Default)]
pub struct Workspace<T: Entry> {
    rows: Vec<Vec<(usize, T)>>,
    active: Vec<bool>,
    last_step: Vec<usize>,
    minors: Vec<T>,
    scratch: Vec<(usize, T)>,
}

impl<T: Entry> Workspace<T> {
    fn load(&mut self, n: usize, entries: &[(usize, usize, i64)]) -> Option<()> {
        self.rows.resize_with(n.max(self.rows.len()), Vec::new);
        self.rows.truncate(n);
        for row in &mut self.rows {
            row.clear();
        }
        for &(i, j, v) in entries {
            add(&mut self.rows[i], j, T::from_i64(v)?)?;
        }
        Some(())
    }

    /// Loads the Laplacian of a multigraph with edge `skip` removed.
    fn load_laplacian(&mut self, n: usize, edges: &[(usize, usize)], skip: usize) -> Option<()> {
        self.rows.resize_with(n.max(self.rows.len()), Vec::new);
        self.rows.truncate(n);
        for row in &mut self.rows {
            row.clear();
        }
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if idx != skip {
                add(&mut self.rows[u], v, T::ZERO.sub(T::ONE)?)?;
                add(&mut self.rows[v], u, T::ZERO.sub(T::ONE)?)?;
                add(&mut self.rows[u], u, T::ONE)?;
                add(&mut self.rows[v], v, T::ONE)?;
            }
        }
        Some(())
    }

    /// `(tau(G - e), tau(G / e))`, eliminating non-terminals newest first.
    pub fn stv_newest_first(&mut self, n: usize, edges: &[(usize, usize)], marked: usize) -> Option<(T, T)> {
        let (x, y) = edges[marked];
        self.load_laplacian(n, edges, marked)?;
        let mut order = (0..n).rev().filter(|&v| v != x && v != y).chain([x, y]);
        self.run(|_, _| order.next().expect("n pivots"))?;
        Some((self.minors[n - 1], self.minors[n - 2]))
    }

    /// Spanning-tree count, eliminating newest first and leaving vertex 0 out.
    pub fn tau_newest_first(&mut self, n: usize, edges: &[(usize, usize)]) -> Option<T> {
        if n <= 1 {
            return Some(if n == 1 { T::ONE } else { T::ZERO });
        }
        self.load_laplacian(n, edges, usize::MAX)?;
        let mut order = (0..n).rev();
        self.run(|_, _| order.next().expect("n pivots"))?;
        Some(self.minors[n - 1])
    }

    fn run(&mut self, mut pick: impl FnMut(&[Vec<(usize, T)>], &[bool]) -> usize) -> Option<()> {
        let n = self.rows.len();
        self.active.clear();
        self.active.resize(n, true);
        self.last_step.clear();
        self.last_step.resize(n, 0);
        self.minors.clear();
        self.minors.push(T::ONE);
        for step in 1..=n {
            let r = pick(&self.rows, &self.active);
            let prev = self.minors[step - 1];
            refresh(&mut self.rows[r], &mut self.last_step[r], step - 1, &self.minors)?;
            let pivot = self.rows[r].iter().find(|&&(c, _)| c == r).map_or(T::ZERO, |&(_, v)| v);
            self.active[r] = false;
            if pivot == T::ZERO {
                self.minors.resize(n + 1, T::ZERO);
                return Some(());
            }
            self.minors.push(pivot);
            let pivot_row = std::mem::take(&mut self.rows[r]);
            for &(w, a_wr) in &pivot_row {
                if w == r || !self.active[w] {
                    continue;
                }
                refresh(&mut self.rows[w], &mut self.last_step[w], step - 1, &self.minors)?;
                // the reduced matrix stays symmetric, so the pivot row holds a[w][r]
                combine(&self.rows[w], &pivot_row, pivot, a_wr, prev, r, &self.active, &mut self.scratch)?;
                std::mem::swap(&mut self.rows[w], &mut self.scratch);
                self.last_step[w] = step;
            }
            self.rows[r] = pivot_row;
        }
        Some(())
    }
}

fn add<T: Entry>(row: &mut Vec<(usize, T)>, col: usize, v: T) -> Option<()> {
    match row.binary_search_by_key(&col, |&(c, _)| c) {
        Ok(i) => row[i].1 = row[i].1.add(v)?,
        Err(i) => row.insert(i, (col, v)),
    }
    Some(())
}

/// Brings a row from step `last` up to step `now`.
fn refresh<T: Entry>(row: &mut [(usize, T)], last: &mut usize, now: usize, minors: &[T]) -> Option<()> {
    if *last != now {
        let (num, den) = (minors[now], minors[*last]);
        for (_, v) in row.iter_mut() {
            *v = v.mul(num)?.div(den);
        }
        *last = now;
    }
    Some(())
}

/// `out = (pivot * w - a_wr * r) / prev` over active columns other than `skip`.
#[allow(clippy::too_many_arguments)]
fn combine<T: Entry>(
    w: &[(usize, T)],
    r: &[(usize, T)],
    pivot: T,
    a_wr: T,
    prev: T,
    skip: usize,
    active: &[bool],
    out: &mut Vec<(usize, T)>,
) -> Option<()> {
    out.clear();
    let (mut i, mut j) = (0, 0);
    loop {
        let (col, x, y) = match (w.get(i), r.get(j)) {
            (None, None) => break,
            (Some(&(cw, x)), Some(&(cr, y))) if cw == cr => {
                i += 1;
                j += 1;
                (cw, x, y)
            }
            (Some(&(cw, x)), Some(&(cr, _))) if cw < cr => {
                i += 1;
                (cw, x, T::ZERO)
            }
            (Some(&(cw, x)), None) => {
                i += 1;
                (cw, x, T::ZERO)
            }
            (_, Some(&(cr, y))) => {
                j += 1;
                (cr, T::ZERO, y)
            }
        };
        if col == skip || !active[col] {
            continue;
        }
        let v = pivot.mul(x)?.sub(a_wr.mul(y)?)?.div(prev);
        if v != T::ZERO {
            out.push((col, v));
        }
    }
    Some(())
}

/// Laplacian entries of a loopless multigraph.
pub fn laplacian_entries(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize, i64)> {
    let mut deg = vec![0i64; n];
    let mut out = Vec::with_capacity(2 * edges.len() + n);
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        out.push((u, v, -1));
        out.push((v, u, -1));
    }
    out.extend(deg.iter().enumerate().map(|(v, &d)| (v, v, d)));
    out
}

/// `(tau(G - e), tau(G / e))` from one elimination of the Laplacian of
/// `G - e`: the minor avoiding both endpoints counts spanning trees of
/// `G / e`, and the minor avoiding only `y` counts those of `G - e`.
pub fn stv_by_elimination(n: usize, edges: &[(usize, usize)], marked: usize) -> Option<(i128, i128)> {
    let (x, y) = edges[marked];
    let mut rest = Vec::with_capacity(edges.len());
    rest.extend_from_slice(&edges[..marked]);
    rest.extend_from_slice(&edges[marked + 1..]);
    let minors = leading_minors(n, &laplacian_entries(n, &rest), &[x, y])?;
    Some((minors[n - 1], minors[n - 2]))
}

/// Spanning-tree count: the minor avoiding the last vertex.
pub fn tau_by_elimination(n: usize, edges: &[(usize, usize)]) -> Option<i128> {
    if n <= 1 {
        return Some(n as i128);
    }
    let minors = leading_minors(n, &laplacian_entries(n, edges), &[n - 1])?;
    Some(minors[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treegraph::det::spanning_tree_count;
    use num_bigint::BigInt;

    #[test]
    fn matches_dense_on_complete_graphs() {
        for n in 1..=9usize {
            let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            assert_eq!(BigInt::from(tau_by_elimination(n, &edges).unwrap()), spanning_tree_count(n, &edges));
        }
    }

    #[test]
    fn fixed_order_agrees_with_min_degree() {
        let g = crate::treegraph::MarkedGraph::single_edge().attach_path(3).attach_path(1).attach_path(2);
        let (n, edges, m) = (g.graph().vertex_count(), g.graph().edges(), g.marked_index());
        let mut ws = Workspace::<i64>::default();
        let (d, c) = ws.stv_newest_first(n, edges, m).unwrap();
        assert_eq!(Some((d as i128, c as i128)), stv_by_elimination(n, edges, m));
        assert_eq!(ws.stv_newest_first(2, &[(0, 1)], 0), Some((0, 1)));
    }

    #[test]
    fn disconnected_is_zero() {
        assert_eq!(tau_by_elimination(4, &[(0, 1), (2, 3)]), Some(0));
        assert_eq!(tau_by_elimination(3, &[(0, 1)]), Some(0));
    }

    #[test]
    fn stv_of_small_graphs() {
        assert_eq!(stv_by_elimination(2, &[(0, 1)], 0), Some((0, 1)));
        assert_eq!(stv_by_elimination(3, &[(0, 1), (1, 2), (0, 2)], 1), Some((1, 2)));
        let k4: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for m in 0..6 {
            assert_eq!(stv_by_elimination(4, &k4, m), Some((8, 8)));
        }
    }

    #[test]
    fn overflow_reports_none() {
        // a huge multi-edge weight overflows i128 products quickly
        let entries: Vec<(usize, usize, i64)> =
            (0..6).flat_map(|i| (0..6).map(move |j| (i, j, if i == j { i64::MAX / 2 } else { -(1 << 40) }))).collect();
        assert_eq!(leading_minors(6, &entries, &[]), None);
    }
}

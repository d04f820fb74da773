use num_bigint::BigUint;
use treefrac::census::{bounded_tails, enumerate_t, growth_witness, DEFAULT_CAP};
use treefrac::cfrac::AlternatingCf;
use treefrac::treegraph::{build_trimmed, Multigraph};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn values(n: usize) -> Vec<u64> {
    enumerate_t(n, true, DEFAULT_CAP).unwrap().values.iter().map(|v| v.try_into().unwrap()).collect()
}

#[test]
fn small_value_sets() {
    assert_eq!(values(4), vec![1, 3, 4, 8, 16]);
    assert_eq!(values(5), vec![1, 3, 4, 5, 8, 9, 11, 12, 16, 20, 21, 24, 40, 45, 75]);
}

#[test]
fn nested_and_basic_membership() {
    for n in 3..6 {
        let (a, b) = (enumerate_t(n, true, DEFAULT_CAP).unwrap(), enumerate_t(n + 1, true, DEFAULT_CAP).unwrap());
        assert!(a.values.iter().all(|v| b.contains(v)), "T({n}) not inside T({})", n + 1);
    }
    for n in 3..=6 {
        let t = enumerate_t(n, true, DEFAULT_CAP).unwrap();
        assert!(t.contains(&big(n as u64)) && t.contains(&big(1)) && !t.contains(&big(2)));
        // Euler: at most 3n - 6 edges, so at most C(3n-6, n-1) spanning trees
        let bound = binomial(3 * n as u64 - 6, n as u64 - 1);
        assert!(t.values.last().unwrap() <= &big(bound));
        for (v, g) in &t.witnesses {
            assert_eq!(&g.tau(), v);
            assert!(g.is_simple() && g.is_planar() && g.is_connected() && g.vertex_count() == n);
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn cayley_counts() {
    for n in 2..=8usize {
        assert_eq!(Multigraph::complete(n).tau(), big(n as u64).pow(n as u32 - 2));
    }
    // K4 is planar and attains the maximum of T(4)
    assert_eq!(enumerate_t(4, true, DEFAULT_CAP).unwrap().values.last(), Some(&big(16)));
    // K5 is not planar but does appear without the planarity filter
    assert!(!enumerate_t(5, true, DEFAULT_CAP).unwrap().contains(&big(125)));
    assert!(enumerate_t(5, false, DEFAULT_CAP).unwrap().contains(&big(125)));
}

#[test]
fn wedge_multiplies_counts() {
    // gluing at a vertex: T(a) * T(b) lands in T(a + b - 1)
    for (a, b) in [(3, 3), (3, 4), (4, 4), (3, 5)] {
        let (ta, tb) = (enumerate_t(a, true, DEFAULT_CAP).unwrap(), enumerate_t(b, true, DEFAULT_CAP).unwrap());
        let tab = enumerate_t(a + b - 1, true, DEFAULT_CAP).unwrap();
        for (x, gx) in &ta.witnesses {
            for (y, gy) in &tb.witnesses {
                let w = gx.wedge(0, gy, 0);
                assert_eq!(w.tau(), x * y);
                assert!(w.is_planar());
                assert!(tab.contains(&(x * y)));
            }
        }
    }
}

#[test]
fn trimmed_constructions_land_in_census() {
    for tail in bounded_tails(5, 5) {
        let mut digits = vec![1];
        digits.extend(&tail);
        let r = build_trimmed(&AlternatingCf::new(digits).unwrap()).unwrap();
        assert_eq!(r.tau, r.t);
        assert_eq!(r.vertex_count as u64, tail.iter().sum::<u64>() + 2);
        assert!(r.simple && r.planar);
        assert!(enumerate_t(r.vertex_count, true, DEFAULT_CAP).unwrap().contains(&r.tau), "{tail:?}");
    }
}

#[test]
fn growth_witness_counts_grow() {
    let w: Vec<_> = [8, 10, 12].iter().map(|&b| growth_witness(3, b).unwrap()).collect();
    for pair in w.windows(2) {
        assert!(pair[0].count <= pair[1].count);
        assert!(pair[0].values.is_subset(&pair[1].values));
    }
    assert!(w[2].rate > 1.0);
}

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use treefrac::cfrac::{alternating_pair, AlternatingCf};
use treefrac::orbit::{ball, congruence_quotient, numerators, representation_counts, sl2_order, DEFAULT_ELEMENT_CAP};

type M = [i128; 4];

fn mul(x: &M, y: &M) -> M {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

fn norm_sq(m: &M) -> i128 {
    m.iter().map(|x| x * x).sum()
}

/// Every word of every length up to the first length at which even the
/// all-ones word (entrywise smallest) leaves the ball.
fn brute_ball(a: u64, n: i128) -> HashSet<M> {
    let gens: Vec<M> = (1..=a as i128).map(|b| mul(&[0, 1, 1, 1], &[0, 1, 1, b])).collect();
    let mut out = HashSet::new();
    let mut level: Vec<M> = vec![[1, 0, 0, 1]];
    let mut ones: M = [1, 0, 0, 1];
    loop {
        ones = mul(&ones, &gens[0]);
        if norm_sq(&ones) > n * n {
            break;
        }
        level = level.iter().flat_map(|m| gens.iter().map(move |g| mul(m, g))).collect();
        out.extend(level.iter().filter(|m| norm_sq(m) <= n * n));
    }
    out
}

#[test]
fn ball_matches_word_enumeration() {
    for a in [2u64, 3] {
        for n in [10u64, 100, 1000] {
            let b = ball(a, n, DEFAULT_ELEMENT_CAP).unwrap();
            let brute = brute_ball(a, n as i128);
            assert_eq!(b.len(), brute.len(), "A={a} N={n}");
            let counts = representation_counts(&b, (0, 1), (1, 0));
            assert_eq!(counts.values().sum::<usize>(), b.len());
            // independent representation numbers: bottom-left entry
            let mut want: BTreeMap<BigInt, usize> = BTreeMap::new();
            for m in &brute {
                *want.entry(BigInt::from(m[2])).or_insert(0) += 1;
            }
            assert_eq!(counts, want);
        }
    }
}

/// Numerators `t <= limit` of alternating strings with digits up to `a`;
/// appending a digit never decreases `t`.
fn alternating_numerators(a: u64, limit: u64) -> BTreeSet<BigInt> {
    fn go(a: u64, limit: &BigUint, prefix: &mut Vec<u64>, out: &mut BTreeSet<BigInt>) {
        for d in 1..=a {
            prefix.push(d);
            let (t, _) = alternating_pair(&AlternatingCf::new(prefix.clone()).unwrap());
            if &t <= limit {
                out.insert(BigInt::from(t));
                go(a, limit, prefix, out);
            }
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(a, &BigUint::from(limit), &mut Vec::new(), &mut out);
    out
}

#[test]
fn numerators_are_alternating_numerators() {
    // <(0,1) gamma, (1,0)> = t for gamma = M_{b1} ... M_{bm}
    let b = ball(3, 400, DEFAULT_ELEMENT_CAP).unwrap();
    let nums = numerators(&b.elements, (0, 1), (1, 0));
    let direct = alternating_numerators(3, 400);
    assert!(nums.is_subset(&direct));
    let small: BTreeSet<BigInt> = direct.into_iter().filter(|t| *t <= BigInt::from(20)).collect();
    assert!(small.is_subset(&nums));
}

#[test]
fn full_reduction_for_two_digits() {
    for q in 2..=12u32 {
        let c = congruence_quotient(2, q).unwrap();
        assert!(c.full && c.contains_identity() && c.is_closed());
        assert_eq!(c.reached.len() as u64, sl2_order(q as u64));
        assert_eq!(c.residues((0, 1), (1, 0)).len(), q as usize);
    }
    // a single generator only reaches a cyclic subgroup
    assert!(!congruence_quotient(1, 7).unwrap().full);
}

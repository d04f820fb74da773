//! Fraction-free (Bareiss) determinants and the matrix-tree theorem.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact determinant of a square integer matrix by Bareiss elimination.
///
/// Runs in checked `i128` first and restarts over `BigInt` on overflow, so
/// the result is exact either way.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Some(d) = bareiss_i128(&mut small) {
        return BigInt::from(d);
    }
    let mut big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    bareiss_big(&mut big)
}

fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| a[i][k] != 0);
            match swap {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        let pivot = a[k][k];
        for i in k + 1..n {
            let aik = a[i][k];
            for j in k + 1..n {
                let lhs = pivot.checked_mul(a[i][j])?;
                let rhs = aik.checked_mul(a[k][j])?;
                a[i][j] = lhs.checked_sub(rhs)? / prev;
            }
            a[i][k] = 0;
        }
        prev = pivot;
    }
    a[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let aik = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = pivot * &row[j] - &aik * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Laplacian of a loopless multigraph; off-diagonal entries are minus the
/// edge multiplicity.
pub fn laplacian(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut l = vec![vec![0i64; n]; n];
    for &(u, v) in edges {
        l[u][u] += 1;
        l[v][v] += 1;
        l[u][v] -= 1;
        l[v][u] -= 1;
    }
    l
}

/// Spanning-tree count as the determinant of the Laplacian with the last
/// row and column removed.
pub fn spanning_tree_count(n: usize, edges: &[(usize, usize)]) -> BigInt {
    if n <= 1 {
        return BigInt::from(n as u32);
    }
    let mut l = laplacian(n, edges);
    l.pop();
    for row in &mut l {
        row.pop();
    }
    bareiss_det(&l)
}

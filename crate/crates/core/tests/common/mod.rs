//! Independent reference implementations shared by the property and
//! acceptance tests.
#![allow(dead_code)]

use arith_torsion::linalg::SparseIntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Quotient rounded to the nearest integer, so remainders are at most half
/// the pivot and pivots shrink geometrically.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = x.div_mod_floor(p);
    if (&r * 2u8).abs() > p.abs() {
        q += 1;
    }
    q
}

/// Textbook dense Smith normal form: move the smallest entry of the trailing
/// block to the pivot, clear its row and column by Euclidean steps, repeat.
/// Returns the nonzero invariant factors, positive and chained.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return out;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = nearest_quotient(&a[i][t], &p);
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                        *x -= &q * y;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = nearest_quotient(&a[t][j], &p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest; otherwise fold the offending row in
            match (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero())) {
                Some(i) => {
                    let other = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&other).skip(t) {
                        *x += y;
                    }
                }
                None => {
                    out.push(p.abs());
                    break;
                }
            }
        }
    }
    out
}

/// Determinantal divisors: `d_k = D_k / D_{k-1}` with `D_k` the gcd of all
/// `k × k` minors. Exponential; meant for matrices up to about 5 × 5.
pub fn minors_snf(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<BigInt>]) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        n => (0..n)
            .filter(|&j| !a[0][j].is_zero())
            .map(|j| {
                let sub: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &a[0][j] * cofactor_det(&sub);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

/// Random small matrix. A third are sparse, a third are products of two
/// thin factors (so rank-deficient with nontrivial divisors), the rest dense.
pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> Vec<Vec<BigInt>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let entry = |rng: &mut R, bound: i64| BigInt::from(rng.gen_range(-bound..=bound));
    match rng.gen_range(0..3) {
        0 => (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { entry(rng, 12) } else { BigInt::zero() }).collect())
            .collect(),
        1 => {
            let k = rng.gen_range(1..=r.min(c));
            let left: Vec<Vec<BigInt>> = (0..r).map(|_| (0..k).map(|_| entry(rng, 4)).collect()).collect();
            let right: Vec<Vec<BigInt>> = (0..k).map(|_| (0..c).map(|_| entry(rng, 4)).collect()).collect();
            (0..r)
                .map(|i| (0..c).map(|j| (0..k).map(|l| &left[i][l] * &right[l][j]).sum()).collect())
                .collect()
        }
        _ => (0..r).map(|_| (0..c).map(|_| entry(rng, 9)).collect()).collect(),
    }
}

pub fn sparse(a: &[Vec<BigInt>]) -> SparseIntMatrix {
    SparseIntMatrix::from_rows(a)
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination with row pivoting. Every intermediate entry is a minor of the
/// input, so growth is bounded by Hadamard's inequality.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant of a square rational matrix. Rows are scaled to integers
/// by the lcm of their denominators, the integer determinant is computed
/// fraction-free and the scaling is divided out.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det_rational needs a square matrix");
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect()
        })
        .collect();
    BigRational::new(bareiss_det(rows), scale)
}

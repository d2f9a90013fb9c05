use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::precision;
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, rank_profile, Rational, SparseIntMatrix};

/// Torsion `T > 0` of a based acyclic complex, kept exactly as `T²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionValue {
    #[serde(with = "crate::serde_util::rational")]
    pub t_squared: Rational,
    /// `T` itself when `T²` is the square of a rational.
    #[serde(with = "crate::serde_util::opt_rational")]
    pub t: Option<Rational>,
    /// `log T = ½ log T²` in decimal.
    pub log_t: String,
}

impl TorsionValue {
    pub fn from_t_squared(t_squared: Rational, digits: usize) -> Self {
        assert!(t_squared.is_positive(), "T² must be positive");
        let t = exact_sqrt(t_squared.numer())
            .zip(exact_sqrt(t_squared.denom()))
            .map(|(n, d)| Rational::new(n, d));
        let log_t = precision::scaled_ln(&Rational::new(1.into(), 2.into()), &t_squared, digits);
        TorsionValue { t_squared, t, log_t }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `Δ_q = D_q^T D_q + D_{q-1} D_{q-1}^T`.
pub fn laplacian(cx: &CochainComplex, q: usize) -> SparseIntMatrix {
    let n = cx.dims()[q];
    let mut out = SparseIntMatrix::zeros(n, n);
    if let Some(d) = cx.maps().get(q) {
        out = d.transpose().mul(d);
    }
    if q > 0 {
        let d = cx.map(q - 1);
        for (r, c, v) in d.mul(&d.transpose()).iter() {
            out.add_to(r, c, v);
        }
    }
    out
}

fn dense_rows(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.iter() {
        rows[r][c] = v.clone();
    }
    rows
}

/// Determinant of a symmetric matrix restricted to its image:
/// `det(B^T Δ B) / det(B^T B)` for a basis `B` of the column space. Equals
/// `det Δ` when `Δ` is nonsingular, and 1 for the zero matrix.
pub fn nonzero_part_det(delta: &SparseIntMatrix) -> Rational {
    let profile = rank_profile(delta);
    if profile.rank == delta.rows() {
        return Rational::from_integer(bareiss_det(dense_rows(delta)));
    }
    let mut pivots = profile.pivot_cols.clone();
    pivots.sort_unstable();
    let mut b = SparseIntMatrix::zeros(delta.rows(), pivots.len());
    for (k, &c) in pivots.iter().enumerate() {
        for r in 0..delta.rows() {
            if let Some(v) = delta.get(r, c) {
                b.set(r, k, v.clone());
            }
        }
    }
    let bt = b.transpose();
    let num = bareiss_det(dense_rows(&bt.mul(delta).mul(&b)));
    let den = bareiss_det(dense_rows(&bt.mul(&b)));
    Rational::new(num, den)
}

pub fn reidemeister_torsion(cx: &CochainComplex) -> Result<TorsionValue> {
    reidemeister_torsion_with(cx, precision::digits_from_env()?)
}

/// `T² = Π_q det(Δ_q)^{(-1)^{q+1} q}` for a complex that is exact over Q.
///
/// The sign of the exponent is fixed so that `T` equals the alternating
/// product `Π |H^q|^{(-1)^{q+1}}` (two-term complex `Z --n--> Z` gives `|n|`).
pub fn reidemeister_torsion_with(cx: &CochainComplex, digits: usize) -> Result<TorsionValue> {
    if let Some(&degree) = cx.non_acyclic_degrees().first() {
        return Err(Error::NotAcyclic { degree });
    }
    let dets: Vec<(usize, BigInt)> = (1..cx.dims().len())
        .into_par_iter()
        .map(|q| (q, bareiss_det(dense_rows(&laplacian(cx, q)))))
        .collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (q, det) in dets {
        if !det.is_positive() {
            return Err(Error::Internal(format!("Laplacian determinant in degree {q} is {det}")));
        }
        let p = num_traits::pow(det, q);
        if q % 2 == 1 {
            num *= p;
        } else {
            den *= p;
        }
    }
    Ok(TorsionValue::from_t_squared(Rational::new(num, den), digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(n: i64) -> CochainComplex {
        CochainComplex::new(vec![1, 1], vec![SparseIntMatrix::from_rows(&[vec![n]])]).unwrap()
    }

    #[test]
    fn two_term_torsion_is_abs_n() {
        let t = reidemeister_torsion_with(&two_term(-7), 20).unwrap();
        assert_eq!(t.t, Some(Rational::from_integer(7.into())));
        assert_eq!(t.t_squared, Rational::from_integer(49.into()));
        assert_eq!(t.log_t, "1.9459101490553133051");
    }

    #[test]
    fn refuses_non_acyclic() {
        assert_eq!(
            reidemeister_torsion_with(&two_term(0), 10),
            Err(Error::NotAcyclic { degree: 0 })
        );
    }

    #[test]
    fn nonzero_part_of_singular_laplacian() {
        // rank-one projection scaled: [[1,1],[1,1]] has nonzero eigenvalue 2
        let d = SparseIntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(nonzero_part_det(&d), Rational::from_integer(2.into()));
        assert_eq!(nonzero_part_det(&SparseIntMatrix::zeros(2, 2)), Rational::one());
        let d = SparseIntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(nonzero_part_det(&d), Rational::from_integer(6.into()));
    }

    #[test]
    fn irrational_torsion_has_no_exact_root() {
        let v = TorsionValue::from_t_squared(Rational::from_integer(2.into()), 10);
        assert_eq!(v.t, None);
        assert_eq!(v.log_t, "0.3465735903");
    }
}

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::det::bareiss_det;

/// Dense row-major integer matrix. Used for module actions, where matrices
/// are small and mostly full.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn try_from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("matrix rows have different lengths".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &IntMatrix, scale: &BigInt) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * scale;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        bareiss_det(self.to_rows())
    }

    /// Inverse of a matrix with determinant ±1, which is again integral.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotUnimodular(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let d = self.det();
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(format!("determinant is {d}")));
        }
        let inv = rational_inverse(self).ok_or_else(|| Error::Internal("singular".into()))?;
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = &inv[r][c];
                if !v.is_integer() {
                    return Err(Error::Internal("unimodular inverse not integral".into()));
                }
                out[(r, c)] = v.to_integer();
            }
        }
        Ok(out)
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }
}

/// Gauss-Jordan inverse over the rationals; `None` if singular.
pub(crate) fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = m
                .row(r)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            row.extend((0..n).map(|c| {
                if c == r {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<crate::serde_util::Int>> = (0..self.rows)
            .map(|r| self.row(r).iter().cloned().map(crate::serde_util::Int).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<crate::serde_util::Int>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.0).collect())
            .collect();
        IntMatrix::try_from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn non_unimodular_is_rejected() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(a.unimodular_inverse(), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let m: IntMatrix = serde_json::from_str(r#"[[1, "-2"], ["123456789012345678901234567890", 0]]"#).unwrap();
        assert_eq!(m[(0, 1)], BigInt::from(-2));
        assert_eq!(m[(1, 0)].to_string(), "123456789012345678901234567890");
    }
}

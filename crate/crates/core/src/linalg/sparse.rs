use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::dense::IntMatrix;

/// Sparse matrix over the integers. Absent entries are zero and no stored
/// entry is ever zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::from(1));
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone().into());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples. Zero values are
    /// dropped; repeated positions and out-of-range indices are rejected.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut entries = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Invalid(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            if entries.contains_key(&(r, c)) {
                return Err(Error::Invalid(format!("duplicate entry at ({r}, {c})")));
            }
            if !v.is_zero() {
                entries.insert((r, c), v);
            }
        }
        Ok(SparseIntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from dense rows. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&BigInt> {
        self.entries.get(&(r, c))
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let sum = self.entries.get(&(r, c)).map_or_else(|| v.clone(), |e| e + v);
        self.set(r, c, sum);
    }

    /// Iterates nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let rhs_rows = rhs.row_maps();
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for (&(r, k), a) in &self.entries {
            for (&c, b) in &rhs_rows[k] {
                *acc[r].entry(c).or_insert_with(BigInt::zero) += a * b;
            }
        }
        let mut out = SparseIntMatrix::zeros(self.rows, rhs.cols);
        for (r, row) in acc.into_iter().enumerate() {
            for (c, v) in row {
                if !v.is_zero() {
                    out.entries.insert((r, c), v);
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.entries = self.entries.clone();
        for (&(r, c), v) in &other.entries {
            out.entries.insert((r + self.rows, c + self.cols), v.clone());
        }
        out
    }

    /// Largest bit-length of any stored entry (0 for the zero matrix).
    pub fn max_bits(&self) -> u64 {
        self.entries.values().map(|v| v.bits()).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// One ordered map per row, keyed by column.
    pub fn row_maps(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            d[(r, c)] = v.clone();
        }
        d
    }

    pub fn from_dense(d: &IntMatrix) -> Self {
        let mut m = SparseIntMatrix::zeros(d.rows(), d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if !d[(r, c)].is_zero() {
                    m.entries.insert((r, c), d[(r, c)].clone());
                }
            }
        }
        m
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseIntMatrix({}x{}, {{", self.rows, self.cols)?;
        for (i, (&(r, c), v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c}): {v}")?;
        }
        write!(f, "}})")
    }
}

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, snf_with, IntMatrix, Rational, SnfOptions, SnfResult, SparseIntMatrix};

/// Finite cochain complex of free abelian groups `Z^{dims[0]} → Z^{dims[1]} → ...`.
/// `maps[q]` is `D_q`, of shape `dims[q+1] x dims[q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    maps: Vec<SparseIntMatrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<SparseIntMatrix>) -> Result<Self> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(Error::Invalid(format!(
                "{} degrees need {} maps, found {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (q, d) in maps.iter().enumerate() {
            if d.rows() != dims[q + 1] || d.cols() != dims[q] {
                return Err(Error::Invalid(format!(
                    "D_{q} is {}x{} but degrees {q}, {} have ranks {}, {}",
                    d.rows(),
                    d.cols(),
                    q + 1,
                    dims[q],
                    dims[q + 1]
                )));
            }
        }
        Ok(CochainComplex { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[SparseIntMatrix] {
        &self.maps
    }

    pub fn map(&self, q: usize) -> &SparseIntMatrix {
        &self.maps[q]
    }

    /// Exact check of `D_{q+1} D_q = 0` in every degree.
    pub fn check_dd(&self) -> Result<()> {
        for q in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[q + 1].mul(&self.maps[q]).is_zero() {
                return Err(Error::Inconsistent { degree: q, next: q + 1 });
            }
        }
        Ok(())
    }

    /// Block sum, degree by degree.
    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        let n = self.dims.len().max(other.dims.len());
        let dim = |cx: &CochainComplex, q: usize| cx.dims.get(q).copied().unwrap_or(0);
        let map = |cx: &CochainComplex, q: usize| {
            cx.maps
                .get(q)
                .cloned()
                .unwrap_or_else(|| SparseIntMatrix::zeros(dim(cx, q + 1), dim(cx, q)))
        };
        let dims = (0..n).map(|q| dim(self, q) + dim(other, q)).collect();
        let maps = (0..n.saturating_sub(1))
            .map(|q| map(self, q).direct_sum(&map(other, q)))
            .collect();
        CochainComplex { dims, maps }
    }

    /// The same complex in new bases: the columns of `bases[q]` (unimodular)
    /// become the basis of degree `q`, so `D_q ↦ U_{q+1}^{-1} D_q U_q`.
    pub fn change_basis(&self, bases: &[IntMatrix]) -> Result<CochainComplex> {
        if bases.len() != self.dims.len() {
            return Err(Error::Invalid("one basis matrix per degree is required".into()));
        }
        for (q, u) in bases.iter().enumerate() {
            if u.rows() != self.dims[q] || u.cols() != self.dims[q] {
                return Err(Error::Invalid(format!("basis for degree {q} has the wrong size")));
            }
        }
        let inverses: Vec<IntMatrix> = bases.iter().map(IntMatrix::unimodular_inverse).collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(q, d)| SparseIntMatrix::from_dense(&inverses[q + 1].mul(&d.to_dense()).mul(&bases[q])))
            .collect();
        CochainComplex::new(self.dims.clone(), maps)
    }

    /// Degrees with nonzero rational cohomology, via rational ranks only.
    pub fn non_acyclic_degrees(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.par_iter().map(rational_rank).collect();
        (0..self.dims.len())
            .filter(|&q| {
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = if q > 0 { ranks[q - 1] } else { 0 };
                out + inc != self.dims[q]
            })
            .collect()
    }

    /// Exact over Q in every degree. The empty complex is acyclic.
    pub fn is_acyclic(&self) -> bool {
        self.non_acyclic_degrees().is_empty()
    }

    pub fn cohomology(&self) -> Result<CohomologyResult> {
        self.cohomology_with(&SnfOptions::default())
    }

    /// `H^q = ker D_q / im D_{q-1}`. Because `ker D_q` is saturated, the
    /// torsion of `H^q` is the torsion of `coker D_{q-1}`, i.e. the nonunit
    /// invariant factors of `D_{q-1}`.
    pub fn cohomology_with(&self, opts: &SnfOptions) -> Result<CohomologyResult> {
        let snfs: Vec<SnfResult> = self
            .maps
            .par_iter()
            .map(|d| snf_with(d, opts))
            .collect::<Result<_>>()?;
        let degrees = (0..self.dims.len())
            .map(|q| {
                let out = snfs.get(q).map_or(0, |s| s.rank);
                let incoming = if q > 0 { Some(&snfs[q - 1]) } else { None };
                let inc = incoming.map_or(0, |s| s.rank);
                let elementary_divisors = incoming.map_or_else(Vec::new, SnfResult::torsion);
                // only reachable when D∘D = 0 was not checked
                let free_rank = self.dims[q]
                    .checked_sub(out + inc)
                    .ok_or(Error::Inconsistent { degree: q.saturating_sub(1), next: q })?;
                Ok(DegreeCohomology {
                    degree: q,
                    free_rank,
                    torsion_order: elementary_divisors.iter().product(),
                    elementary_divisors,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CohomologyResult { degrees })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub free_rank: usize,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub elementary_divisors: Vec<BigInt>,
    #[serde(with = "crate::serde_util::bigint")]
    pub torsion_order: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|d| d.free_rank == 0)
    }

    /// `Σ (-1)^q free_rank(H^q)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.degree % 2 == 0 { d.free_rank as i64 } else { -(d.free_rank as i64) })
            .sum()
    }

    /// `Π_q |H^q|^{(-1)^{q+1}}` over the torsion subgroups.
    pub fn alternating_torsion(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for d in &self.degrees {
            if d.degree % 2 == 1 {
                num *= &d.torsion_order;
            } else {
                den *= &d.torsion_order;
            }
        }
        Rational::new(num.abs(), den.abs())
    }
}

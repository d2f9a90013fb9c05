use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::group::{GroupRingElement, Word};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A lattice `Z^rank` with a unimodular action of each generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModuleFile", into = "ModuleFile")]
pub struct CoeffModule {
    rank: usize,
    action: Vec<IntMatrix>,
    inverse: Vec<IntMatrix>,
}

/// On-disk shape of a module file, before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub rank: usize,
    pub action: Vec<IntMatrix>,
}

impl TryFrom<ModuleFile> for CoeffModule {
    type Error = Error;
    fn try_from(r: ModuleFile) -> Result<Self> {
        CoeffModule::new(r.rank, r.action)
    }
}

impl From<CoeffModule> for ModuleFile {
    fn from(m: CoeffModule) -> Self {
        ModuleFile {
            rank: m.rank,
            action: m.action,
        }
    }
}

impl CoeffModule {
    /// Validates shapes and unimodularity (`|det| = 1`) of every generator.
    pub fn new(rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        let mut inverse = Vec::with_capacity(action.len());
        for (i, a) in action.iter().enumerate() {
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::Invalid(format!(
                    "generator {} acts by a {}x{} matrix on a rank-{rank} module",
                    i + 1,
                    a.rows(),
                    a.cols()
                )));
            }
            let inv = a.unimodular_inverse().map_err(|e| match e {
                Error::NotUnimodular(msg) => Error::NotUnimodular(format!("generator {}: {msg}", i + 1)),
                other => other,
            })?;
            inverse.push(inv);
        }
        Ok(CoeffModule {
            rank,
            action,
            inverse,
        })
    }

    /// Like [`CoeffModule::new`] with inverses supplied by the caller; they are
    /// checked by multiplication instead of recomputed.
    pub fn with_inverses(rank: usize, action: Vec<IntMatrix>, inverse: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != inverse.len() {
            return Err(Error::Invalid("one inverse per generator is required".into()));
        }
        for (i, (a, b)) in action.iter().zip(&inverse).enumerate() {
            let square = |m: &IntMatrix| m.rows() == rank && m.cols() == rank;
            if !square(a) || !square(b) || !a.mul(b).is_identity() {
                return Err(Error::NotUnimodular(format!("generator {}: supplied inverse is wrong", i + 1)));
            }
        }
        Ok(CoeffModule {
            rank,
            action,
            inverse,
        })
    }

    /// `Z^rank` with every one of `generators` acting trivially.
    pub fn trivial(rank: usize, generators: usize) -> Self {
        let id = IntMatrix::identity(rank);
        CoeffModule {
            rank,
            action: vec![id.clone(); generators],
            inverse: vec![id; generators],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Matrix of a word; letter `-k` uses the inverse of generator `k`.
    pub fn evaluate(&self, w: &Word) -> IntMatrix {
        w.letters()
            .iter()
            .fold(IntMatrix::identity(self.rank), |acc, &l| {
                let g = l.unsigned_abs() as usize - 1;
                let m = if l > 0 { &self.action[g] } else { &self.inverse[g] };
                acc.mul(m)
            })
    }

    /// Matrix of a group-ring element, `Σ a_w ρ(w)`.
    pub fn evaluate_element(&self, e: &GroupRingElement, cache: &mut HashMap<Word, IntMatrix>) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank, self.rank);
        for (w, c) in e.terms() {
            let m = cache.entry(w.clone()).or_insert_with(|| self.evaluate(w));
            out.add_scaled(m, c);
        }
        out
    }

    /// Checks that every relator acts as the identity.
    pub fn check_relators(&self, relators: &[Word]) -> Result<()> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= self.generators() {
                    return Err(Error::Invalid(format!(
                        "relator {i} uses generator {} but the module has {}",
                        g + 1,
                        self.generators()
                    )));
                }
            }
            if !self.evaluate(r).is_identity() {
                return Err(Error::RelatorViolated { relator: i });
            }
        }
        Ok(())
    }

    /// The contragredient module on `Hom(M, Z)`: `g ↦ transpose(ρ(g)^{-1})`.
    pub fn dual(&self) -> CoeffModule {
        CoeffModule {
            rank: self.rank,
            action: self.inverse.iter().map(IntMatrix::transpose).collect(),
            inverse: self.action.iter().map(IntMatrix::transpose).collect(),
        }
    }

    /// `M ⊕ N` with block-diagonal action.
    pub fn direct_sum(&self, other: &CoeffModule) -> Result<CoeffModule> {
        if self.generators() != other.generators() {
            return Err(Error::Invalid("direct sum of modules over different generator sets".into()));
        }
        let n = self.rank + other.rank;
        let block = |a: &IntMatrix, b: &IntMatrix| {
            let mut m = IntMatrix::zeros(n, n);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m[(r, c)] = a[(r, c)].clone();
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m[(self.rank + r, self.rank + c)] = b[(r, c)].clone();
                }
            }
            m
        };
        Ok(CoeffModule {
            rank: n,
            action: self.action.iter().zip(&other.action).map(|(a, b)| block(a, b)).collect(),
            inverse: self.inverse.iter().zip(&other.inverse).map(|(a, b)| block(a, b)).collect(),
        })
    }

    /// Same module in the lattice basis given by the columns of `basis`
    /// (a unimodular matrix): `g ↦ basis^{-1} ρ(g) basis`.
    pub fn change_basis(&self, basis: &IntMatrix) -> Result<CoeffModule> {
        let inv = basis.unimodular_inverse()?;
        CoeffModule::new(
            self.rank,
            self.action.iter().map(|a| inv.mul(a).mul(basis)).collect(),
        )
    }

    pub fn trace(&self, w: &Word) -> BigInt {
        self.evaluate(w).trace()
    }
}

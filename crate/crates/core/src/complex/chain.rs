use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::cochain::CochainComplex;
use crate::complex::group::{GroupPresentation, GroupRingElement, Word};
use crate::complex::module::CoeffModule;
use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;
use crate::serde_util::Int;

/// Sparse matrix over the group ring. Entry `(i, j)` is the coefficient of
/// `σ_i` in the boundary of `σ_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&GroupRingElement> {
        self.entries.get(&(r, c))
    }

    /// Adds `e` to entry `(r, c)`, dropping it if the sum vanishes.
    pub fn add_to(&mut self, r: usize, c: usize, e: &GroupRingElement) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        let sum = match self.entries.remove(&(r, c)) {
            Some(old) => old.add(e),
            None => e.clone(),
        };
        if !sum.is_zero() {
            self.entries.insert((r, c), sum);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &GroupRingElement)> {
        self.entries.iter()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.entries.values().filter_map(GroupRingElement::max_generator).max()
    }
}

/// A finite based complex of free left `Z[Γ]`-modules, cells in degrees
/// `0..=top_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexFile", into = "ComplexFile")]
pub struct GroupRingComplex {
    presentation: GroupPresentation,
    basis_sizes: Vec<usize>,
    /// `boundaries[q - 1]` is `∂_q : C_q → C_{q-1}`.
    boundaries: Vec<GroupRingMatrix>,
}

impl GroupRingComplex {
    pub fn new(
        presentation: GroupPresentation,
        basis_sizes: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        presentation.validate()?;
        if boundaries.len() + 1 != basis_sizes.len().max(1) {
            return Err(Error::Invalid(format!(
                "{} basis sizes need {} boundary matrices, found {}",
                basis_sizes.len(),
                basis_sizes.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let q = k + 1;
            if b.rows != basis_sizes[q - 1] || b.cols != basis_sizes[q] {
                return Err(Error::Invalid(format!(
                    "boundary {q} is {}x{} but basis sizes require {}x{}",
                    b.rows,
                    b.cols,
                    basis_sizes[q - 1],
                    basis_sizes[q]
                )));
            }
            if let Some(g) = b.max_generator() {
                if g >= presentation.len() {
                    return Err(Error::Invalid(format!(
                        "boundary {q} uses generator {} but only {} are declared",
                        g + 1,
                        presentation.len()
                    )));
                }
            }
        }
        Ok(GroupRingComplex {
            presentation,
            basis_sizes,
            boundaries,
        })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn basis_sizes(&self) -> &[usize] {
        &self.basis_sizes
    }

    /// Highest degree with cells, or `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.basis_sizes.len().checked_sub(1)
    }

    /// `∂_q` for `1 <= q <= top_degree`.
    pub fn boundary(&self, q: usize) -> &GroupRingMatrix {
        &self.boundaries[q - 1]
    }

    /// Degreewise sum of two complexes over the same presentation.
    pub fn direct_sum(&self, other: &GroupRingComplex) -> Result<GroupRingComplex> {
        if self.presentation != other.presentation {
            return Err(Error::Invalid("direct sum of complexes over different presentations".into()));
        }
        let n = self.basis_sizes.len().max(other.basis_sizes.len());
        let size = |cx: &GroupRingComplex, q: usize| cx.basis_sizes.get(q).copied().unwrap_or(0);
        let sizes: Vec<usize> = (0..n).map(|q| size(self, q) + size(other, q)).collect();
        let mut boundaries = Vec::new();
        for q in 1..n {
            let mut b = GroupRingMatrix::zeros(sizes[q - 1], sizes[q]);
            if q < self.basis_sizes.len() {
                for (&(r, c), e) in self.boundary(q).entries() {
                    b.add_to(r, c, e);
                }
            }
            if q < other.basis_sizes.len() {
                let (dr, dc) = (size(self, q - 1), size(self, q));
                for (&(r, c), e) in other.boundary(q).entries() {
                    b.add_to(r + dr, c + dc, e);
                }
            }
            boundaries.push(b);
        }
        GroupRingComplex::new(self.presentation.clone(), sizes, boundaries)
    }
}

/// How a group-ring entry becomes an integer block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Σ a_g ρ(g)`.
    #[default]
    Direct,
    /// `Σ a_g ρ(g^{-1})^T`, i.e. `Direct` applied to the dual lattice.
    Contragredient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecializeOptions {
    pub convention: Convention,
    pub check_dd: bool,
}

impl Default for SpecializeOptions {
    fn default() -> Self {
        SpecializeOptions {
            convention: Convention::Direct,
            check_dd: true,
        }
    }
}

/// Integer cochain complex `Hom_{Z[Γ]}(C_*, M)` in the bases `σ_j^q ⊗ e_k`.
///
/// `D_{q-1} : C^{q-1} → C^q` has shape `(r_q·rank) x (r_{q-1}·rank)`, and its
/// block `(j, i)` is the substitution of `∂_q[i][j]`.
pub fn specialize(cx: &GroupRingComplex, m: &CoeffModule, opts: SpecializeOptions) -> Result<CochainComplex> {
    if m.generators() != cx.presentation.len() {
        return Err(Error::Invalid(format!(
            "module acts by {} generators but the complex is over {}",
            m.generators(),
            cx.presentation.len()
        )));
    }
    m.check_relators(&cx.presentation.relators)?;
    let dual;
    let module = match opts.convention {
        Convention::Direct => m,
        Convention::Contragredient => {
            dual = m.dual();
            &dual
        }
    };
    let rank = module.rank();
    let dims: Vec<usize> = cx.basis_sizes.iter().map(|r| r * rank).collect();
    let maps: Vec<SparseIntMatrix> = cx
        .boundaries
        .par_iter()
        .map(|b| {
            let mut cache: HashMap<Word, crate::linalg::IntMatrix> = HashMap::new();
            let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
            for (&(i, j), e) in b.entries() {
                let block = module.evaluate_element(e, &mut cache);
                for r in 0..rank {
                    for c in 0..rank {
                        let v = &block[(r, c)];
                        if v.sign() != num_bigint::Sign::NoSign {
                            triplets.push((j * rank + r, i * rank + c, v.clone()));
                        }
                    }
                }
            }
            SparseIntMatrix::from_triplets(b.cols * rank, b.rows * rank, triplets)
        })
        .collect::<Result<_>>()?;
    let out = CochainComplex::new(dims, maps)?;
    if opts.check_dd {
        out.check_dd()?;
    }
    Ok(out)
}

/// On-disk shape of a complex file, before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<Word>,
    pub basis_sizes: Vec<usize>,
    /// `boundaries[k]` lists the nonzero entries of `∂_{k+1}`.
    pub boundaries: Vec<Vec<EntryFile>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryFile {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<(Word, Int)>,
}

impl TryFrom<ComplexFile> for GroupRingComplex {
    type Error = Error;

    fn try_from(f: ComplexFile) -> Result<Self> {
        let presentation = GroupPresentation {
            generators: f.generators,
            relators: f.relators,
        };
        if f.boundaries.len() + 1 != f.basis_sizes.len().max(1) {
            return Err(Error::Invalid(format!(
                "{} basis sizes need {} boundary lists, found {}",
                f.basis_sizes.len(),
                f.basis_sizes.len().saturating_sub(1),
                f.boundaries.len()
            )));
        }
        let mut boundaries = Vec::new();
        for (k, entries) in f.boundaries.into_iter().enumerate() {
            let (rows, cols) = (f.basis_sizes[k], f.basis_sizes[k + 1]);
            let mut b = GroupRingMatrix::zeros(rows, cols);
            for e in entries {
                if e.row >= rows || e.col >= cols {
                    return Err(Error::Invalid(format!(
                        "boundary {} entry ({}, {}) outside a {rows}x{cols} matrix",
                        k + 1,
                        e.row,
                        e.col
                    )));
                }
                let elt = GroupRingElement::from_terms(e.terms.into_iter().map(|(w, c)| (w, c.0)));
                b.add_to(e.row, e.col, &elt);
            }
            boundaries.push(b);
        }
        GroupRingComplex::new(presentation, f.basis_sizes, boundaries)
    }
}

impl From<GroupRingComplex> for ComplexFile {
    fn from(cx: GroupRingComplex) -> Self {
        ComplexFile {
            generators: cx.presentation.generators,
            relators: cx.presentation.relators,
            basis_sizes: cx.basis_sizes,
            boundaries: cx
                .boundaries
                .iter()
                .map(|b| {
                    b.entries()
                        .map(|(&(row, col), e)| EntryFile {
                            row,
                            col,
                            terms: e.terms().map(|(w, c)| (w.clone(), Int(c.clone()))).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn one_generator() -> GroupPresentation {
        GroupPresentation::new(vec!["t".into()], vec![]).unwrap()
    }

    fn elt(terms: &[(i64, i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(terms.iter().map(|&(e, c)| (Word::power(0, e), BigInt::from(c))))
    }

    #[test]
    fn trivial_group_zero_boundary() {
        let p = GroupPresentation::new(vec![], vec![]).unwrap();
        let cx = GroupRingComplex::new(p, vec![1, 1], vec![GroupRingMatrix::zeros(1, 1)]).unwrap();
        let co = specialize(&cx, &CoeffModule::trivial(1, 0), SpecializeOptions::default()).unwrap();
        assert_eq!(co.map(0), &SparseIntMatrix::zeros(1, 1));
    }

    #[test]
    fn trivial_module_gives_augmentation() {
        let mut b = GroupRingMatrix::zeros(1, 2);
        b.add_to(0, 0, &elt(&[(2, 3), (-1, -1)]));
        b.add_to(0, 1, &elt(&[(1, 1), (0, -1)]));
        let cx = GroupRingComplex::new(one_generator(), vec![1, 2], vec![b]).unwrap();
        let co = specialize(&cx, &CoeffModule::trivial(1, 1), SpecializeOptions::default()).unwrap();
        assert_eq!(co.map(0), &SparseIntMatrix::from_rows(&[vec![2], vec![0]]));
    }

    #[test]
    fn shape_and_generator_validation() {
        let b = GroupRingMatrix::zeros(2, 1);
        assert!(GroupRingComplex::new(one_generator(), vec![1, 1], vec![b]).is_err());
        let mut b = GroupRingMatrix::zeros(1, 1);
        b.add_to(0, 0, &GroupRingElement::monomial(Word::power(3, 1), 1));
        assert!(GroupRingComplex::new(one_generator(), vec![1, 1], vec![b]).is_err());
    }

    #[test]
    fn inconsistent_complex_is_rejected() {
        // ∂1 = t - 1, ∂2 = t - 1 does not compose to zero
        let mut b1 = GroupRingMatrix::zeros(1, 1);
        b1.add_to(0, 0, &elt(&[(1, 1), (0, -1)]));
        let cx = GroupRingComplex::new(one_generator(), vec![1, 1, 1], vec![b1.clone(), b1]).unwrap();
        let m = CoeffModule::new(1, vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let err = specialize(&cx, &m, SpecializeOptions::default()).unwrap_err();
        assert_eq!(err, Error::Inconsistent { degree: 0, next: 1 });
        let opts = SpecializeOptions {
            check_dd: false,
            ..Default::default()
        };
        assert!(specialize(&cx, &m, opts).is_ok());
    }

    #[test]
    fn contragredient_uses_inverse_transpose() {
        let mut b = GroupRingMatrix::zeros(1, 1);
        b.add_to(0, 0, &elt(&[(1, 1)]));
        let cx = GroupRingComplex::new(one_generator(), vec![1, 1], vec![b]).unwrap();
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let m = CoeffModule::new(2, vec![a]).unwrap();
        let direct = specialize(&cx, &m, SpecializeOptions::default()).unwrap();
        assert_eq!(direct.map(0), &SparseIntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        let opts = SpecializeOptions {
            convention: Convention::Contragredient,
            check_dd: true,
        };
        let contra = specialize(&cx, &m, opts).unwrap();
        assert_eq!(contra.map(0), &SparseIntMatrix::from_rows(&[vec![1, 0], vec![-1, 1]]));
    }

    #[test]
    fn file_round_trip() {
        let mut b = GroupRingMatrix::zeros(1, 1);
        b.add_to(0, 0, &elt(&[(1, 1), (0, -1)]));
        let cx = GroupRingComplex::new(one_generator(), vec![1, 1], vec![b]).unwrap();
        let text = serde_json::to_string(&cx).unwrap();
        assert_eq!(
            text,
            r#"{"generators":["t"],"relators":[],"basis_sizes":[1,1],"boundaries":[[{"row":0,"col":0,"terms":[[[],-1],[[1],1]]}]]}"#
        );
        let back: GroupRingComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cx);
    }
}

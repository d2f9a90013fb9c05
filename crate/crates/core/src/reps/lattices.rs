//! Integral lattices in `GL_g` modules: symmetric powers, their duals, and
//! Schur-module lattices cut out of tensor powers of `Z^3` by Young
//! symmetrizers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::CoeffModule;
use crate::error::{Error, Result};
use crate::linalg::dense::rational_inverse;
use crate::linalg::snf::DEFAULT_BIT_CAP;
use crate::linalg::{rank_profile, saturated_column_basis, IntMatrix, Rational, SparseIntMatrix};
use crate::reps::weights::HighestWeight;

/// Exponent vectors of degree-`m` monomials in `g` variables, graded
/// lexicographic: `x_1^m` first, `x_g^m` last.
pub fn monomial_basis(g: usize, m: usize) -> Vec<Vec<u32>> {
    fn rec(g: usize, m: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if g == 1 {
            prefix.push(m as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=m).rev() {
            prefix.push(e as u32);
            rec(g - 1, m - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if g > 0 {
        rec(g, m, &mut Vec::new(), &mut out);
    } else if m == 0 {
        out.push(Vec::new());
    }
    out
}

type Poly = BTreeMap<Vec<u32>, BigInt>;

fn poly_mul_linear(p: &Poly, form: &[(usize, BigInt)]) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (i, a) in form {
            let mut e2 = e.clone();
            e2[*i] += 1;
            *out.entry(e2).or_insert_with(BigInt::zero) += c * a;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Matrix of `Sym^m(A)` on the monomial basis, with `A` acting covariantly on
/// the variables: `x_j ↦ Σ_i A_ij x_i`.
pub fn sym_power_action(a: &IntMatrix, m: usize) -> IntMatrix {
    assert!(a.is_square(), "Sym^m of a non-square matrix");
    let g = a.rows();
    let basis = monomial_basis(g, m);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let forms: Vec<Vec<(usize, BigInt)>> = (0..g)
        .map(|j| (0..g).filter(|&i| !a[(i, j)].is_zero()).map(|i| (i, a[(i, j)].clone())).collect())
        .collect();
    let mut out = IntMatrix::zeros(basis.len(), basis.len());
    for (col, e) in basis.iter().enumerate() {
        let mut p = Poly::from([(vec![0; g], BigInt::one())]);
        for (j, &ej) in e.iter().enumerate() {
            for _ in 0..ej {
                p = poly_mul_linear(&p, &forms[j]);
            }
        }
        for (mono, c) in p {
            out[(index[&mono], col)] = c;
        }
    }
    out
}

fn checked_inverses(gens: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    gens.iter()
        .enumerate()
        .map(|(i, a)| {
            if !a.is_square() {
                return Err(Error::Invalid(format!("generator {} is not square", i + 1)));
            }
            a.unimodular_inverse()
                .map_err(|e| Error::NotUnimodular(format!("generator {}: {e}", i + 1)))
        })
        .collect()
}

fn same_size(gens: &[IntMatrix]) -> Result<usize> {
    let g = gens.first().map_or(0, IntMatrix::rows);
    if gens.iter().any(|a| a.rows() != g) {
        return Err(Error::Invalid("generator matrices have different sizes".into()));
    }
    Ok(g)
}

/// `Sym^m` of the standard lattice, rank `binom(g+m-1, m)`.
pub fn sym_power_lattice(gens: &[IntMatrix], m: usize) -> Result<CoeffModule> {
    let g = same_size(gens)?;
    let inv = checked_inverses(gens)?;
    CoeffModule::with_inverses(
        monomial_basis(g, m).len(),
        gens.iter().map(|a| sym_power_action(a, m)).collect(),
        inv.iter().map(|a| sym_power_action(a, m)).collect(),
    )
}

/// `Sym^m` of the dual lattice: `γ ↦ Sym^m((γ^{-1})^T)`.
pub fn dual_sym_power_lattice(gens: &[IntMatrix], m: usize) -> Result<CoeffModule> {
    same_size(gens)?;
    let inv = checked_inverses(gens)?;
    let duals: Vec<IntMatrix> = inv.iter().map(IntMatrix::transpose).collect();
    let dual_inv: Vec<IntMatrix> = gens.iter().map(IntMatrix::transpose).collect();
    let g = duals.first().map_or(0, IntMatrix::rows);
    CoeffModule::with_inverses(
        monomial_basis(g, m).len(),
        duals.iter().map(|a| sym_power_action(a, m)).collect(),
        dual_inv.iter().map(|a| sym_power_action(a, m)).collect(),
    )
}

pub const DEFAULT_SCHUR_CAP: usize = 8;
const SCHUR_DIM: usize = 3;

/// Distinct orderings of a multiset.
fn arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    let mut counts = [0usize; SCHUR_DIM];
    for &i in items {
        counts[i] += 1;
    }
    fn rec(counts: &mut [usize; SCHUR_DIM], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in 0..SCHUR_DIM {
            if counts[v] > 0 {
                counts[v] -= 1;
                cur.push(v);
                rec(counts, left - 1, cur, out);
                cur.pop();
                counts[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut counts, items.len(), &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing sequences of length `len` over `0..SCHUR_DIM`.
fn sorted_rows(len: usize) -> Vec<Vec<usize>> {
    monomial_basis(SCHUR_DIM, len)
        .into_iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .flat_map(|(v, &c)| std::iter::repeat_n(v, c as usize))
                .collect()
        })
        .collect()
}

/// The lattice `c_λ (Z^3)^{⊗k} ⊗ Q ∩ (Z^3)^{⊗k}` for a two-row partition,
/// which carries the `SL_3` module of highest weight
/// `(λ_1 - λ_2) ω_1 + λ_2 ω_2`.
#[derive(Clone, Debug)]
pub struct SchurLattice {
    partition: (usize, usize),
    /// Columns: a basis of the saturated lattice in tensor coordinates.
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
    minor_inverse: Vec<Vec<Rational>>,
}

impl SchurLattice {
    pub fn new(partition: (usize, usize)) -> Result<Self> {
        Self::with_cap(partition, DEFAULT_SCHUR_CAP)
    }

    pub fn with_cap(partition: (usize, usize), cap: usize) -> Result<Self> {
        let (l1, l2) = partition;
        if l1 < l2 {
            return Err(Error::Invalid(format!("({l1}, {l2}) is not a partition")));
        }
        let k = l1 + l2;
        if k > cap {
            return Err(Error::CapExceeded(format!("tensor degree {k} exceeds the cap of {cap}")));
        }
        let size = SCHUR_DIM.pow(k as u32);
        let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &i| acc * SCHUR_DIM + i);
        let mut triplets = Vec::new();
        let mut col = 0;
        for top in sorted_rows(l1) {
            let top_arr = arrangements(&top);
            for bottom in sorted_rows(l2) {
                let bottom_arr = arrangements(&bottom);
                // b_λ a_λ e_I up to a positive scalar
                let mut v: BTreeMap<usize, BigInt> = BTreeMap::new();
                for r1 in &top_arr {
                    for r2 in &bottom_arr {
                        let mut t: Vec<usize> = r1.iter().chain(r2).copied().collect();
                        for mask in 0u32..(1 << l2) {
                            for c in 0..l2 {
                                if mask & (1 << c) != 0 {
                                    t.swap(c, l1 + c);
                                }
                            }
                            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                            *v.entry(encode(&t)).or_insert_with(BigInt::zero) += sign;
                            for c in 0..l2 {
                                if mask & (1 << c) != 0 {
                                    t.swap(c, l1 + c);
                                }
                            }
                        }
                    }
                }
                let before = triplets.len();
                triplets.extend(v.into_iter().filter(|(_, x)| !x.is_zero()).map(|(r, x)| (r, col, x)));
                if triplets.len() > before {
                    col += 1;
                }
            }
        }
        let span = SparseIntMatrix::from_triplets(size, col, triplets)?;
        let basis = saturated_column_basis(&span, DEFAULT_BIT_CAP)?;
        let expected = HighestWeight::a2((l1 - l2) as i64, l2 as i64)?.dim();
        if BigInt::from(basis.cols()) != expected {
            return Err(Error::Internal(format!(
                "Schur lattice for ({l1}, {l2}) has rank {} but the Weyl dimension is {expected}",
                basis.cols()
            )));
        }
        let profile = rank_profile(&SparseIntMatrix::from_dense(&basis));
        let mut pivot_rows = profile.pivot_rows;
        pivot_rows.sort_unstable();
        let minor = IntMatrix::try_from_rows(pivot_rows.iter().map(|&r| basis.row(r).to_vec()).collect())?;
        let minor_inverse = rational_inverse(&minor)
            .ok_or_else(|| Error::Internal("pivot minor of the Schur basis is singular".into()))?;
        Ok(SchurLattice {
            partition,
            basis,
            pivot_rows,
            minor_inverse,
        })
    }

    pub fn partition(&self) -> (usize, usize) {
        self.partition
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Matrix of `A^{⊗k}` restricted to the lattice, for any integer 3x3 `A`.
    pub fn action(&self, a: &IntMatrix) -> Result<IntMatrix> {
        if a.rows() != SCHUR_DIM || a.cols() != SCHUR_DIM {
            return Err(Error::Invalid("Schur lattices are built for 3x3 matrices".into()));
        }
        let k = self.partition.0 + self.partition.1;
        let r = self.rank();
        let mut out = IntMatrix::zeros(r, r);
        for j in 0..r {
            let mut v: Vec<BigInt> = (0..self.basis.rows()).map(|i| self.basis[(i, j)].clone()).collect();
            for pos in 0..k {
                v = apply_at(&v, a, pos, k);
            }
            for (row, inv_row) in self.minor_inverse.iter().enumerate() {
                let mut x = Rational::zero();
                for (p, &pr) in self.pivot_rows.iter().enumerate() {
                    if !v[pr].is_zero() {
                        x += &inv_row[p] * Rational::from_integer(v[pr].clone());
                    }
                }
                if !x.is_integer() {
                    return Err(Error::Internal("Schur lattice is not invariant".into()));
                }
                out[(row, j)] = x.to_integer();
            }
            // the pivot rows determine x; all other rows must agree
            for (i, vi) in v.iter().enumerate() {
                let bx: BigInt = (0..r).map(|c| &self.basis[(i, c)] * &out[(c, j)]).sum();
                if &bx != vi {
                    return Err(Error::Internal("image leaves the Schur subspace".into()));
                }
            }
        }
        Ok(out)
    }

    pub fn module(&self, gens: &[IntMatrix]) -> Result<CoeffModule> {
        let inv = checked_inverses(gens)?;
        CoeffModule::with_inverses(
            self.rank(),
            gens.iter().map(|a| self.action(a)).collect::<Result<_>>()?,
            inv.iter().map(|a| self.action(a)).collect::<Result<_>>()?,
        )
    }
}

/// Applies `A` to tensor slot `pos` (slot 0 is the most significant digit).
fn apply_at(v: &[BigInt], a: &IntMatrix, pos: usize, k: usize) -> Vec<BigInt> {
    let stride = SCHUR_DIM.pow((k - 1 - pos) as u32);
    let mut out = vec![BigInt::zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let s = (idx / stride) % SCHUR_DIM;
        let base = idx - s * stride;
        for r in 0..SCHUR_DIM {
            let c = &a[(r, s)];
            if !c.is_zero() {
                out[base + r * stride] += c * x;
            }
        }
    }
    out
}

/// `CoeffModule` on the Schur lattice of `partition` for 3x3 unimodular
/// generators.
pub fn schur_module_lattice(gens: &[IntMatrix], partition: (usize, usize)) -> Result<CoeffModule> {
    SchurLattice::new(partition)?.module(gens)
}

/// Schur polynomial `s_λ(x_1, x_2, x_3)` by enumerating semistandard tableaux.
pub fn schur_polynomial(partition: (usize, usize), x: &[BigInt; 3]) -> BigInt {
    let (l1, l2) = partition;
    let mono = |row: &[usize]| row.iter().fold(BigInt::one(), |acc, &i| acc * &x[i]);
    let mut total = BigInt::zero();
    for top in sorted_rows(l1) {
        let t = mono(&top);
        for bottom in sorted_rows(l2) {
            if (0..l2).all(|c| bottom[c] > top[c]) {
                total += &t * mono(&bottom);
            }
        }
    }
    total
}

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomOptions {
    /// Split model pivots are drawn from `±1..=±max_pivot`.
    pub max_pivot: i64,
    /// Elementary operations per basis change, per basis vector.
    pub mixing: usize,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions { max_pivot: 9, mixing: 2 }
    }
}

pub fn random_acyclic(shape: &[usize], seed: u64) -> Result<CochainComplex> {
    random_acyclic_with(shape, seed, &RandomOptions::default())
}

/// Ranks of the maps in the split model, `k_q = r_q - k_{q-1}`.
fn split_ranks(shape: &[usize]) -> Result<Vec<usize>> {
    let mut ks = Vec::with_capacity(shape.len());
    let mut prev = 0usize;
    for (q, &r) in shape.iter().enumerate() {
        let k = r.checked_sub(prev).ok_or_else(|| {
            Error::Infeasible(format!("rank {r} in degree {q} is smaller than the incoming image {prev}"))
        })?;
        ks.push(k);
        prev = k;
    }
    if prev != 0 {
        return Err(Error::Infeasible(format!(
            "alternating rank sum of {shape:?} is not zero"
        )));
    }
    Ok(ks)
}

/// Exact-over-Q complex: a split model `Z^{k} --diag(n_i)--> Z^{k}` in each
/// degree pair, conjugated by random unimodular bases. Deterministic in `seed`.
pub fn random_acyclic_with(shape: &[usize], seed: u64, opts: &RandomOptions) -> Result<CochainComplex> {
    if opts.max_pivot < 1 {
        return Err(Error::Invalid("max_pivot must be at least 1".into()));
    }
    let ks = split_ranks(shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Degree q: first k_{q-1} coordinates are the image, the rest map out.
    let mut model = Vec::new();
    for q in 0..shape.len().saturating_sub(1) {
        let incoming = if q > 0 { ks[q - 1] } else { 0 };
        let mut d = SparseIntMatrix::zeros(shape[q + 1], shape[q]);
        for i in 0..ks[q] {
            let mag = rng.gen_range(1..=opts.max_pivot);
            let v = if rng.gen_bool(0.5) { mag } else { -mag };
            d.set(i, incoming + i, BigInt::from(v));
        }
        model.push(d);
    }
    let bases: Vec<(IntMatrix, IntMatrix)> = shape
        .iter()
        .map(|&n| random_unimodular(n, opts.mixing * n, &mut rng))
        .collect();
    // D'_q = U_{q+1} D_q U_q^{-1}
    let maps = model
        .iter()
        .enumerate()
        .map(|(q, d)| SparseIntMatrix::from_dense(&bases[q + 1].0.mul(&d.to_dense()).mul(&bases[q].1)))
        .collect();
    CochainComplex::new(shape.to_vec(), maps)
}

/// A random product of `steps` elementary integer operations, with its
/// inverse tracked alongside.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n == 0 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || n == 1 {
            // negate row i: self-inverse, applied to U's row and inv's column
            for c in 0..n {
                u[(i, c)] = -u[(i, c)].clone();
                inv[(c, i)] = -inv[(c, i)].clone();
            }
            continue;
        }
        let k = BigInt::from(*[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
        // row_j += k row_i on U; column_i -= k column_j on U^{-1}
        for c in 0..n {
            let add = &u[(i, c)] * &k;
            u[(j, c)] += add;
            let sub = &inv[(c, j)] * &k;
            inv[(c, i)] -= sub;
        }
    }
    (u, inv)
}

/// Adds an elementary pair `Z --1--> Z` in degrees `q, q+1`, placed as the
/// last basis vector of each. Torsion is unchanged.
pub fn simple_expansion(cx: &CochainComplex, q: usize) -> Result<CochainComplex> {
    let dims = cx.dims();
    if q + 1 >= dims.len() {
        return Err(Error::Invalid(format!("no degree {} above degree {q}", q + 1)));
    }
    let mut new_dims = dims.to_vec();
    new_dims[q] += 1;
    new_dims[q + 1] += 1;
    let maps = cx
        .maps()
        .iter()
        .enumerate()
        .map(|(p, d)| {
            let mut m = SparseIntMatrix::zeros(new_dims[p + 1], new_dims[p]);
            for (r, c, v) in d.iter() {
                m.set(r, c, v.clone());
            }
            if p == q {
                m.set(new_dims[q + 1] - 1, new_dims[q] - 1, BigInt::from(1));
            }
            m
        })
        .collect();
    CochainComplex::new(new_dims, maps)
}

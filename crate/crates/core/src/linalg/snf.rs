//! Smith normal form of sparse integer matrices.
//!
//! The eliminator works on a row-major sparse store with a column occupancy
//! index so that both row and column operations are cheap. Pivots are chosen
//! by smallest bit-length first and smallest Markowitz fill-in estimate second.
//! Non-divisible entries are folded into the pivot with a unimodular extended
//! gcd step, so the pivot strictly decreases until it divides its row and
//! column.
//!
//! The diagonal produced by elimination is not yet a divisor chain; it is
//! normalized afterwards with pairwise gcd/lcm exchanges.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dense::IntMatrix;
use crate::linalg::det::bareiss_det;
use crate::linalg::rank::rank_profile;
use crate::linalg::sparse::SparseIntMatrix;

pub const DEFAULT_BIT_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SnfStrategy {
    /// Exact integer elimination.
    #[default]
    FractionFree,
    /// Elimination modulo `2|det|` of a maximal nonsingular minor.
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfOptions {
    pub bit_cap: u64,
    pub strategy: SnfStrategy,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions {
            bit_cap: DEFAULT_BIT_CAP,
            strategy: SnfStrategy::FractionFree,
        }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` (zeros are implicit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Product of all nonzero divisors.
    pub fn product(&self) -> BigInt {
        self.divisors.iter().product()
    }
}

pub fn snf(m: &SparseIntMatrix) -> Result<SnfResult> {
    snf_with(m, &SnfOptions::default())
}

pub fn snf_with(m: &SparseIntMatrix, opts: &SnfOptions) -> Result<SnfResult> {
    match opts.strategy {
        SnfStrategy::FractionFree => {
            let mut e = Eliminator::new(m, None, opts.bit_cap, false)?;
            e.run()?;
            let diag: Vec<BigInt> = e.pivots.into_iter().map(|(_, _, v)| v.abs()).collect();
            Ok(SnfResult {
                rank: diag.len(),
                divisors: divisor_chain(diag),
            })
        }
        SnfStrategy::Modular => snf_modular(m, opts.bit_cap),
    }
}

fn snf_modular(m: &SparseIntMatrix, bit_cap: u64) -> Result<SnfResult> {
    let profile = rank_profile(m);
    if profile.rank == 0 {
        return Ok(SnfResult {
            divisors: Vec::new(),
            rank: 0,
        });
    }
    let minor: Vec<Vec<BigInt>> = profile
        .pivot_rows
        .iter()
        .map(|&r| {
            profile
                .pivot_cols
                .iter()
                .map(|&c| m.get(r, c).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let delta = bareiss_det(minor).abs();
    if delta.is_zero() {
        return Err(Error::Internal("pivot minor is singular".into()));
    }
    // Every nonzero invariant factor divides delta, so none vanishes mod 2*delta.
    let modulus = &delta * 2u32;
    let mut e = Eliminator::new(m, Some(modulus.clone()), bit_cap, false)?;
    e.run()?;
    if e.pivots.len() != profile.rank {
        return Err(Error::Internal(format!(
            "modular elimination found {} pivots, rational rank is {}",
            e.pivots.len(),
            profile.rank
        )));
    }
    let diag: Vec<BigInt> = e.pivots.iter().map(|(_, _, v)| v.gcd(&modulus)).collect();
    let divisors = divisor_chain(diag);
    if divisors.contains(&modulus) {
        return Err(Error::Internal("modular divisor reached the modulus".into()));
    }
    Ok(SnfResult {
        rank: divisors.len(),
        divisors,
    })
}

/// Turns a list of positive diagonal entries into the divisor chain of the
/// diagonal matrix they form.
pub(crate) fn divisor_chain(diag: Vec<BigInt>) -> Vec<BigInt> {
    let (ones, mut rest): (Vec<BigInt>, Vec<BigInt>) = diag.into_iter().partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = ones;
    out.extend(rest);
    out.sort();
    out
}

/// A basis of the saturation `span_Q(cols) ∩ Z^rows` of the column span,
/// returned as the columns of a `rows x rank` matrix.
///
/// Elimination gives `R * B * C = P` with `R`, `C` unimodular and `P` a
/// scattered diagonal. The pivot columns of `B * C` are `pivot * R^{-1} e_row`,
/// i.e. multiples of columns of a unimodular matrix, and dividing out the
/// pivot gives a basis of the saturated lattice.
pub fn saturated_column_basis(b: &SparseIntMatrix, bit_cap: u64) -> Result<IntMatrix> {
    let mut e = Eliminator::new(b, None, bit_cap, true)?;
    e.run()?;
    let transform = e.col_transform.take().expect("tracking enabled");
    let rows = b.row_maps();
    let mut out = IntMatrix::zeros(b.rows(), e.pivots.len());
    for (k, (_, pc, pivot)) in e.pivots.iter().enumerate() {
        for (r, row) in rows.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (j, cj) in &transform[*pc] {
                if let Some(bv) = row.get(j) {
                    acc += bv * cj;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let (q, rem) = acc.div_rem(pivot);
            if !rem.is_zero() {
                return Err(Error::Internal("saturation quotient is not integral".into()));
            }
            out[(r, k)] = q;
        }
    }
    Ok(out)
}

type Row = BTreeMap<usize, BigInt>;

struct Eliminator {
    rows: Vec<Row>,
    cols: Vec<BTreeSet<usize>>,
    active_rows: BTreeSet<usize>,
    modulus: Option<BigInt>,
    bit_cap: u64,
    /// Column transform `C`, stored column by column.
    col_transform: Option<Vec<Row>>,
    pivots: Vec<(usize, usize, BigInt)>,
}

impl Eliminator {
    fn new(m: &SparseIntMatrix, modulus: Option<BigInt>, bit_cap: u64, track: bool) -> Result<Self> {
        let mut rows = m.row_maps();
        if let Some(n) = &modulus {
            for row in rows.iter_mut() {
                for v in row.values_mut() {
                    *v = v.mod_floor(n);
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (r, row) in rows.iter().enumerate() {
            for &c in row.keys() {
                cols[c].insert(r);
            }
        }
        let bits = m.max_bits();
        if bits > bit_cap {
            return Err(Error::Capacity { bits, cap: bit_cap });
        }
        let active_rows = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
        let col_transform = track.then(|| {
            (0..m.cols())
                .map(|c| BTreeMap::from([(c, BigInt::one())]))
                .collect()
        });
        Ok(Eliminator {
            rows,
            cols,
            active_rows,
            modulus,
            bit_cap,
            col_transform,
            pivots: Vec::new(),
        })
    }

    fn run(&mut self) -> Result<()> {
        while let Some((pr, pc)) = self.choose_pivot() {
            self.reduce_at(pr, pc)?;
            let value = self.rows[pr].remove(&pc).expect("pivot entry present");
            debug_assert!(self.rows[pr].is_empty());
            self.cols[pc].remove(&pr);
            debug_assert!(self.cols[pc].is_empty());
            self.active_rows.remove(&pr);
            self.pivots.push((pr, pc, value));
        }
        Ok(())
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<((u64, usize), (usize, usize))> = None;
        for &r in &self.active_rows {
            let rlen = self.rows[r].len() - 1;
            for (&c, v) in &self.rows[r] {
                let cost = (v.abs().bits(), rlen * (self.cols[c].len() - 1));
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, (r, c)));
                    if cost == (1, 0) {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, rc)| rc)
    }

    /// Clears row `pr` and column `pc` except for the pivot.
    fn reduce_at(&mut self, pr: usize, pc: usize) -> Result<()> {
        loop {
            let others: Vec<usize> = self.cols[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in others {
                let p = self.rows[pr][&pc].clone();
                let a = match self.rows[r].get(&pc) {
                    Some(a) => a.clone(),
                    None => continue,
                };
                let (q, rem) = a.div_rem(&p);
                if rem.is_zero() {
                    self.row_transform(r, pr, [BigInt::one(), -q], None)?;
                } else {
                    let ext = p.extended_gcd(&a);
                    let (g, s, t) = (ext.gcd, ext.x, ext.y);
                    self.row_transform(pr, r, [s, t], Some([-(&a / &g), &p / &g]))?;
                }
            }

            let mut folded = false;
            let others: Vec<usize> = self.rows[pr].keys().copied().filter(|&c| c != pc).collect();
            for c in others {
                let p = self.rows[pr][&pc].clone();
                let a = match self.rows[pr].get(&c) {
                    Some(a) => a.clone(),
                    None => continue,
                };
                let (q, rem) = a.div_rem(&p);
                if rem.is_zero() {
                    if self.col_transform.is_none() && self.cols[pc].len() == 1 {
                        // Column pc holds only the pivot, so the column
                        // operation touches nothing but this entry.
                        self.rows[pr].remove(&c);
                        self.cols[c].remove(&pr);
                    } else {
                        self.col_transform(c, pc, [BigInt::one(), -q], None)?;
                    }
                } else {
                    let ext = p.extended_gcd(&a);
                    let (g, s, t) = (ext.gcd, ext.x, ext.y);
                    self.col_transform(pc, c, [s, t], Some([-(&a / &g), &p / &g]))?;
                    folded = true;
                }
            }

            if !folded && self.cols[pc].len() == 1 && self.rows[pr].len() == 1 {
                return Ok(());
            }
        }
    }

    fn normalize(&self, v: BigInt) -> Result<BigInt> {
        let v = match &self.modulus {
            Some(n) => v.mod_floor(n),
            None => v,
        };
        let bits = v.bits();
        if bits > self.bit_cap {
            return Err(Error::Capacity {
                bits,
                cap: self.bit_cap,
            });
        }
        Ok(v)
    }

    /// `row_i <- a*row_i + b*row_j`, and if `second` is given,
    /// `row_j <- c*row_i + d*row_j` simultaneously.
    fn row_transform(
        &mut self,
        i: usize,
        j: usize,
        [a, b]: [BigInt; 2],
        second: Option<[BigInt; 2]>,
    ) -> Result<()> {
        let ri = std::mem::take(&mut self.rows[i]);
        let rj = std::mem::take(&mut self.rows[j]);
        let new_i = self.combine(&ri, &a, &rj, &b)?;
        let new_j = match &second {
            Some([c, d]) => self.combine(&ri, c, &rj, d)?,
            None => rj.clone(),
        };
        self.reindex_row(i, &ri, &new_i);
        self.reindex_row(j, &rj, &new_j);
        self.rows[i] = new_i;
        self.rows[j] = new_j;
        for r in [i, j] {
            if self.rows[r].is_empty() {
                self.active_rows.remove(&r);
            }
        }
        Ok(())
    }

    /// Column analogue of [`Self::row_transform`].
    fn col_transform(
        &mut self,
        i: usize,
        j: usize,
        [a, b]: [BigInt; 2],
        second: Option<[BigInt; 2]>,
    ) -> Result<()> {
        let touched: BTreeSet<usize> = self.cols[i].union(&self.cols[j]).copied().collect();
        for r in touched {
            let vi = self.rows[r].get(&i).cloned().unwrap_or_default();
            let vj = self.rows[r].get(&j).cloned().unwrap_or_default();
            let ni = self.normalize(&a * &vi + &b * &vj)?;
            self.set_entry(r, i, ni);
            if let Some([c, d]) = &second {
                let nj = self.normalize(c * &vi + d * &vj)?;
                self.set_entry(r, j, nj);
            }
        }
        if let Some(t) = self.col_transform.as_mut() {
            let ci = std::mem::take(&mut t[i]);
            let cj = std::mem::take(&mut t[j]);
            t[i] = combine_plain(&ci, &a, &cj, &b);
            t[j] = match &second {
                Some([c, d]) => combine_plain(&ci, c, &cj, d),
                None => cj,
            };
        }
        Ok(())
    }

    fn set_entry(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
            if self.rows[r].is_empty() {
                self.active_rows.remove(&r);
            }
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    fn combine(&self, x: &Row, a: &BigInt, y: &Row, b: &BigInt) -> Result<Row> {
        let mut out = Row::new();
        if !a.is_zero() {
            for (&c, v) in x {
                out.insert(c, v * a);
            }
        }
        if !b.is_zero() {
            for (&c, v) in y {
                *out.entry(c).or_insert_with(BigInt::zero) += v * b;
            }
        }
        let mut cleaned = Row::new();
        for (c, v) in out {
            let v = self.normalize(v)?;
            if !v.is_zero() {
                cleaned.insert(c, v);
            }
        }
        Ok(cleaned)
    }

    fn reindex_row(&mut self, r: usize, old: &Row, new: &Row) {
        for c in old.keys() {
            if !new.contains_key(c) {
                self.cols[*c].remove(&r);
            }
        }
        for c in new.keys() {
            self.cols[*c].insert(r);
        }
    }
}

fn combine_plain(x: &Row, a: &BigInt, y: &Row, b: &BigInt) -> Row {
    let mut out = Row::new();
    for (&c, v) in x {
        out.insert(c, v * a);
    }
    for (&c, v) in y {
        *out.entry(c).or_insert_with(BigInt::zero) += v * b;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

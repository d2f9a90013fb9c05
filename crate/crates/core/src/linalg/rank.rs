use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::sparse::SparseIntMatrix;

/// Result of a rational row-echelon pass: the rank and a nonsingular
/// `rank x rank` minor given by original row and column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Rank over the rationals.
pub fn rational_rank(m: &SparseIntMatrix) -> usize {
    rank_profile(m).rank
}

/// Integer row elimination with content removal. Rows are combined as
/// `(p/g)*row - (a/g)*pivot_row` and then divided by their content, which keeps
/// the computation exact without rational arithmetic.
pub fn rank_profile(m: &SparseIntMatrix) -> RankProfile {
    let mut rows = m.row_maps();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, _) in m.iter() {
        col_rows[c].insert(r);
    }
    let mut active: BTreeSet<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut profile = RankProfile {
        rank: 0,
        pivot_rows: Vec::new(),
        pivot_cols: Vec::new(),
    };

    while let Some((pr, pc)) = choose_pivot(&rows, &col_rows, &active) {
        active.remove(&pr);
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        let p = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let a = rows[r][&pc].clone();
            let g = p.gcd(&a);
            let (sp, sa) = (&p / &g, &a / &g);
            let old = std::mem::take(&mut rows[r]);
            let mut new_row: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&c, v) in &old {
                new_row.insert(c, v * &sp);
            }
            for (&c, v) in &pivot_row {
                let e = new_row.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &sa;
            }
            new_row.retain(|_, v| !v.is_zero());
            let content = new_row
                .values()
                .fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for v in new_row.values_mut() {
                    *v = &*v / &content;
                }
            }
            for c in old.keys() {
                if !new_row.contains_key(c) {
                    col_rows[*c].remove(&r);
                }
            }
            for c in new_row.keys() {
                col_rows[*c].insert(r);
            }
            if new_row.is_empty() {
                active.remove(&r);
            }
            rows[r] = new_row;
        }
        profile.rank += 1;
        profile.pivot_rows.push(pr);
        profile.pivot_cols.push(pc);
    }
    profile
}

/// Pivot minimizing (bit-length, Markowitz count) over the active rows.
fn choose_pivot(
    rows: &[BTreeMap<usize, BigInt>],
    col_rows: &[BTreeSet<usize>],
    active: &BTreeSet<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((u64, usize), (usize, usize))> = None;
    for &r in active {
        let rlen = rows[r].len() - 1;
        for (&c, v) in &rows[r] {
            let cost = (v.abs().bits(), rlen * (col_rows[c].len() - 1));
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

//! Small complexes with known cohomology, used as oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::complex::chain::{GroupRingComplex, GroupRingMatrix};
use crate::complex::group::{FiniteGroup, GroupPresentation, GroupRingElement, Word};
use crate::complex::module::CoeffModule;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 12;
pub const MAX_BAR_LENGTH: usize = 4;

fn cyclic_presentation(p: usize) -> GroupPresentation {
    GroupPresentation {
        generators: vec!["t".into()],
        relators: vec![Word::power(0, p as i64)],
    }
}

fn t_pow(e: i64) -> Word {
    Word::power(0, e)
}

/// `t^e - 1`.
fn t_minus_one(e: i64) -> GroupRingElement {
    GroupRingElement::from_terms([(t_pow(e), BigInt::one()), (Word::identity(), -BigInt::one())])
}

/// `1 + t + ... + t^{p-1}`.
fn norm_element(p: usize) -> GroupRingElement {
    GroupRingElement::from_terms((0..p as i64).map(|e| (t_pow(e), BigInt::one())))
}

fn one_by_one(e: GroupRingElement) -> GroupRingMatrix {
    let mut m = GroupRingMatrix::zeros(1, 1);
    m.add_to(0, 0, &e);
    m
}

/// `Z[t]/(1 + t + ... + t^{p-1})` in the basis `1, t, ..., t^{p-2}`: the
/// companion matrix of the cyclotomic polynomial (for prime `p`).
pub fn zeta_module(p: usize) -> Result<CoeffModule> {
    if p < 2 {
        return Err(Error::Invalid(format!("zeta module needs p >= 2, got {p}")));
    }
    let n = p - 1;
    let mut t = IntMatrix::zeros(n, n);
    for k in 0..n - 1 {
        t[(k + 1, k)] = BigInt::one();
    }
    for r in 0..n {
        t[(r, n - 1)] = -BigInt::one();
    }
    CoeffModule::new(n, vec![t])
}

/// Cellular chains of the lens space `L(p, q)` over `Z[Z/p]`, one cell per
/// degree 0..3 with boundaries `t - 1`, `1 + t + ... + t^{p-1}`, `t^q - 1`,
/// together with the acyclic module `Z[t]/(1 + ... + t^{p-1})`.
pub fn lens_complex(p: usize, q: i64) -> Result<(GroupRingComplex, CoeffModule)> {
    if p < 2 {
        return Err(Error::Invalid(format!("lens space needs p >= 2, got {p}")));
    }
    let pi = p as i64;
    if q.gcd(&pi) != 1 {
        return Err(Error::Invalid(format!("q = {q} is not coprime to p = {p}")));
    }
    let r = q.mod_floor(&pi);
    let boundaries = vec![
        one_by_one(t_minus_one(1)),
        one_by_one(norm_element(p)),
        one_by_one(t_minus_one(r)),
    ];
    let cx = GroupRingComplex::new(cyclic_presentation(p), vec![1; 4], boundaries)?;
    Ok((cx, zeta_module(p)?))
}

/// Periodic free resolution of `Z` over `Z[Z/n]` truncated at `length`:
/// boundaries alternate `t - 1` (odd degrees) and the norm (even degrees).
pub fn periodic_complex(n: usize, length: usize) -> Result<GroupRingComplex> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    let boundaries = (1..=length)
        .map(|q| {
            if q % 2 == 1 {
                one_by_one(t_minus_one(1))
            } else {
                one_by_one(norm_element(n))
            }
        })
        .collect();
    GroupRingComplex::new(cyclic_presentation(n), vec![1; length + 1], boundaries)
}

/// Normalized bar resolution of a finite group, truncated at `length`, over
/// the element presentation of `group` (one letter per element).
pub fn bar_complex(group: &FiniteGroup, length: usize) -> Result<GroupRingComplex> {
    bar_complex_with_cap(group, length, DEFAULT_MAX_GROUP_ORDER)
}

pub fn bar_complex_with_cap(group: &FiniteGroup, length: usize, max_order: usize) -> Result<GroupRingComplex> {
    if group.order() > max_order {
        return Err(Error::CapExceeded(format!(
            "group order {} exceeds the cap of {max_order}",
            group.order()
        )));
    }
    if length > MAX_BAR_LENGTH {
        return Err(Error::CapExceeded(format!(
            "bar length {length} exceeds the cap of {MAX_BAR_LENGTH}"
        )));
    }
    let e = group.identity();
    let nonid: Vec<usize> = (0..group.order()).filter(|&g| g != e).collect();
    let k = nonid.len();
    // position of each non-identity element in `nonid`
    let mut slot = vec![usize::MAX; group.order()];
    for (i, &g) in nonid.iter().enumerate() {
        slot[g] = i;
    }
    // Cells of degree q are q-tuples of non-identity elements, indexed in
    // base k with the first entry most significant.
    let index = |tuple: &[usize]| -> Option<usize> {
        tuple.iter().try_fold(0usize, |acc, &g| (g != e).then(|| acc * k + slot[g]))
    };
    let tuple_of = |mut idx: usize, q: usize| -> Vec<usize> {
        let mut t = vec![0; q];
        for pos in (0..q).rev() {
            t[pos] = nonid[idx % k];
            idx /= k;
        }
        t
    };
    let sizes: Vec<usize> = (0..=length).map(|q| k.pow(q as u32)).collect();
    let mut boundaries = Vec::new();
    for q in 1..=length {
        let mut b = GroupRingMatrix::zeros(sizes[q - 1], sizes[q]);
        for j in 0..sizes[q] {
            let t = tuple_of(j, q);
            // g_1 [g_2 | ... | g_q]
            if let Some(i) = index(&t[1..]) {
                b.add_to(i, j, &GroupRingElement::monomial(group.element_word(t[0]), 1));
            }
            for s in 1..q {
                let mut face = t[..s - 1].to_vec();
                face.push(group.mul(t[s - 1], t[s]));
                face.extend_from_slice(&t[s + 1..]);
                if let Some(i) = index(&face) {
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    b.add_to(i, j, &GroupRingElement::monomial(Word::identity(), sign));
                }
            }
            if let Some(i) = index(&t[..q - 1]) {
                let sign = if q % 2 == 0 { 1 } else { -1 };
                b.add_to(i, j, &GroupRingElement::monomial(Word::identity(), sign));
            }
        }
        boundaries.push(b);
    }
    GroupRingComplex::new(group.element_presentation(), sizes, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::chain::{specialize, SpecializeOptions};
    use crate::linalg::SparseIntMatrix;

    #[test]
    fn lens_2_1_acts_by_minus_one() {
        let (cx, m) = lens_complex(2, 1).unwrap();
        assert_eq!(m.action()[0], IntMatrix::from_rows(&[vec![-1]]));
        assert_eq!(cx.basis_sizes(), &[1, 1, 1, 1]);
    }

    #[test]
    fn lens_5_1_d0_is_t_minus_one() {
        let (cx, m) = lens_complex(5, 1).unwrap();
        let co = specialize(&cx, &m, SpecializeOptions::default()).unwrap();
        let expected = SparseIntMatrix::from_rows(&[
            vec![-1, 0, 0, -1],
            vec![1, -1, 0, -1],
            vec![0, 1, -1, -1],
            vec![0, 0, 1, -2],
        ]);
        assert_eq!(co.map(0), &expected);
        assert!(co.map(1).is_zero());
        assert!(co.is_acyclic());
    }

    #[test]
    fn lens_5_2_uses_t_squared() {
        let (cx, _) = lens_complex(5, 2).unwrap();
        assert_eq!(*cx.boundary(3).get(0, 0).unwrap(), t_minus_one(2));
        assert!(lens_complex(6, 4).is_err());
    }

    #[test]
    fn bar_z2_length_2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let cx = bar_complex(&g, 2).unwrap();
        assert_eq!(cx.basis_sizes(), &[1, 1, 1]);
        let t = GroupRingElement::monomial(Word::power(1, 1), 1);
        let one = GroupRingElement::one();
        assert_eq!(*cx.boundary(1).get(0, 0).unwrap(), t.add(&one.scale(&BigInt::from(-1))));
        assert_eq!(*cx.boundary(2).get(0, 0).unwrap(), t.add(&one));
        assert!(g.boundaries_compose_to_zero(&cx, &[0, 1]));
    }

    #[test]
    fn bar_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let cx = bar_complex(&g, 3).unwrap();
        assert_eq!(cx.basis_sizes(), &[1, 0, 0, 0]);
    }

    #[test]
    fn bar_caps() {
        let g = FiniteGroup::cyclic(13).unwrap();
        assert!(matches!(bar_complex(&g, 2), Err(Error::CapExceeded(_))));
        let g = FiniteGroup::cyclic(2).unwrap();
        assert!(matches!(bar_complex(&g, 5), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn bar_boundaries_compose_to_zero_in_group_ring() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let cx = bar_complex(&g, 3).unwrap();
        let images: Vec<usize> = (0..4).collect();
        assert!(g.boundaries_compose_to_zero(&cx, &images));
    }
}

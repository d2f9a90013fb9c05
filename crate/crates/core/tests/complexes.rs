use std::collections::BTreeMap;

use arith_torsion::complex::{
    bar_complex, lens_complex, periodic_complex, specialize, CoeffModule, CochainComplex, CohomologyResult, FiniteGroup,
    SpecializeOptions,
};
use arith_torsion::linalg::{IntMatrix, Rational, SnfOptions};
use arith_torsion::torsion::{random_acyclic, reidemeister_torsion_with, verify_cochain};
use num_bigint::BigInt;

/// Prime-power decomposition of the torsion subgroup, which determines it up
/// to isomorphism independently of how the divisors were chained.
fn primary_parts(divisors: &[BigInt]) -> BTreeMap<(u64, u32), usize> {
    let mut out = BTreeMap::new();
    for d in divisors {
        let mut n: u64 = d.try_into().expect("small divisor");
        let mut p = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                *out.entry((p, e)).or_insert(0) += 1;
            }
            p += 1;
        }
    }
    out
}

fn free_ranks(h: &CohomologyResult) -> Vec<usize> {
    h.degrees.iter().map(|d| d.free_rank).collect()
}

fn divisors(h: &CohomologyResult, q: usize) -> Vec<BigInt> {
    h.degrees[q].elementary_divisors.clone()
}

fn cyclic_modules(n: usize) -> Vec<IntMatrix> {
    let mut gens = vec![IntMatrix::identity(1)];
    if n.is_multiple_of(2) {
        gens.push(IntMatrix::from_rows(&[vec![-1]]));
    }
    // rotation of Z^2 by a primitive 4th or 3rd root where the order allows it
    if n.is_multiple_of(4) {
        gens.push(IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]));
    }
    if n.is_multiple_of(3) {
        gens.push(IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]));
    }
    gens
}

#[test]
fn bar_and_periodic_resolutions_agree_for_cyclic_groups() {
    const LEN: usize = 3;
    for n in 1..=12 {
        let g = FiniteGroup::cyclic(n).unwrap();
        let bar = bar_complex(&g, LEN).unwrap();
        let per = periodic_complex(n, LEN).unwrap();
        for t in cyclic_modules(n) {
            let m_per = CoeffModule::new(t.rows(), vec![t.clone()]).unwrap();
            let m_bar = g.module_from_generators(&[(1 % n, t.clone())]).unwrap();
            let h_bar = specialize(&bar, &m_bar, SpecializeOptions::default()).unwrap().cohomology().unwrap();
            let h_per = specialize(&per, &m_per, SpecializeOptions::default()).unwrap().cohomology().unwrap();
            for q in 0..=LEN {
                assert_eq!(
                    primary_parts(&divisors(&h_bar, q)),
                    primary_parts(&divisors(&h_per, q)),
                    "n = {n}, degree {q}, module {t:?}"
                );
            }
            assert_eq!(free_ranks(&h_bar)[..LEN], free_ranks(&h_per)[..LEN], "n = {n}");
        }
    }
}

#[test]
fn trivial_coefficients_of_cyclic_groups() {
    let per = periodic_complex(6, 5).unwrap();
    let h = specialize(&per, &CoeffModule::trivial(1, 1), SpecializeOptions::default())
        .unwrap()
        .cohomology()
        .unwrap();
    assert_eq!(free_ranks(&h)[..5], [1, 0, 0, 0, 0]);
    let six = vec![BigInt::from(6)];
    assert_eq!(divisors(&h, 2), six);
    assert_eq!(divisors(&h, 4), six);
    assert!(divisors(&h, 3).is_empty());
}

fn s3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    FiniteGroup::from_table(table).unwrap()
}

#[test]
fn symmetric_group_s3_integral_cohomology() {
    let g = s3();
    let cx = bar_complex(&g, 3).unwrap();
    let trivial = g.module_from_generators(&[(1, IntMatrix::identity(1)), (4, IntMatrix::identity(1))]).unwrap();
    let h = specialize(&cx, &trivial, SpecializeOptions::default()).unwrap().cohomology().unwrap();
    assert_eq!(free_ranks(&h)[..3], [1, 0, 0]);
    assert_eq!(divisors(&h, 2), [BigInt::from(2)]);
    assert!(divisors(&h, 3).is_empty());

    // sign representation: H^1 = Z/2
    let minus = IntMatrix::from_rows(&[vec![-1]]);
    let sign = g.module_from_generators(&[(1, minus), (4, IntMatrix::identity(1))]).unwrap();
    let h = specialize(&cx, &sign, SpecializeOptions::default()).unwrap().cohomology().unwrap();
    assert_eq!(free_ranks(&h)[..3], [0, 0, 0]);
    assert_eq!(divisors(&h, 1), [BigInt::from(2)]);
}

#[test]
fn regular_module_is_cohomologically_trivial() {
    let g = FiniteGroup::cyclic(4).unwrap();
    let cx = bar_complex(&g, 3).unwrap();
    let h = specialize(&cx, &g.regular_module(), SpecializeOptions::default())
        .unwrap()
        .cohomology()
        .unwrap();
    assert_eq!(free_ranks(&h)[..3], [1, 0, 0]);
    for q in 0..3 {
        assert!(divisors(&h, q).is_empty(), "degree {q}");
    }
}

#[test]
fn lens_spaces() {
    for (p, q) in [(2, 1), (3, 1), (5, 1), (5, 2), (7, 3), (11, 4), (13, 5)] {
        let (cx, m) = lens_complex(p, q).unwrap();
        let cochain = specialize(&cx, &m, SpecializeOptions::default()).unwrap();
        let h = cochain.cohomology().unwrap();
        assert!(h.is_acyclic());
        let orders: Vec<BigInt> = h.degrees.iter().map(|d| d.torsion_order.clone()).collect();
        let p_big = BigInt::from(p);
        assert_eq!(orders, [BigInt::from(1), p_big.clone(), BigInt::from(1), p_big.clone()], "L({p},{q})");
        let t = reidemeister_torsion_with(&cochain, 30).unwrap();
        assert_eq!(t.t, Some(Rational::from_integer(p_big.pow(2))));
    }
    // q is only defined mod p, including negative representatives
    let a = specialize(&lens_complex(7, 3).unwrap().0, &lens_complex(7, 3).unwrap().1, SpecializeOptions::default());
    let b = specialize(&lens_complex(7, -4).unwrap().0, &lens_complex(7, -4).unwrap().1, SpecializeOptions::default());
    assert_eq!(a.unwrap(), b.unwrap());
}

#[test]
fn contragredient_convention_on_lens_space() {
    let (cx, m) = lens_complex(5, 2).unwrap();
    let opts = SpecializeOptions {
        convention: arith_torsion::complex::Convention::Contragredient,
        ..Default::default()
    };
    let cochain = specialize(&cx, &m, opts).unwrap();
    let report = verify_cochain(&cochain, &SnfOptions::default(), 20).unwrap();
    assert!(report.equal);
}

#[test]
fn direct_sum_is_additive() {
    let (cx, m) = lens_complex(5, 1).unwrap();
    let a = specialize(&cx, &m, SpecializeOptions::default()).unwrap();
    let b = random_acyclic(&[2, 3, 2, 1], 11).unwrap();
    let sum = a.direct_sum(&b);
    let (ha, hb, hs) = (a.cohomology().unwrap(), b.cohomology().unwrap(), sum.cohomology().unwrap());
    for q in 0..4 {
        let mut joined = divisors(&ha, q);
        joined.extend(divisors(&hb, q));
        assert_eq!(primary_parts(&divisors(&hs, q)), primary_parts(&joined), "degree {q}");
        assert_eq!(hs.degrees[q].free_rank, ha.degrees[q].free_rank + hb.degrees[q].free_rank);
    }
    let t = |c: &CochainComplex| reidemeister_torsion_with(c, 20).unwrap().t_squared;
    assert_eq!(t(&sum), t(&a) * t(&b));
}

#[test]
fn euler_characteristic_matches_dimensions() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let cx = bar_complex(&g, 4).unwrap();
    let cochain = specialize(&cx, &g.regular_module(), SpecializeOptions::default()).unwrap();
    let h = cochain.cohomology().unwrap();
    let chi: i64 = cochain
        .dims()
        .iter()
        .enumerate()
        .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    assert_eq!(h.euler_characteristic(), chi);
}

#[test]
fn relator_violations_are_rejected() {
    let (cx, _) = lens_complex(5, 1).unwrap();
    // t acting by -1 does not satisfy t^5 = 1
    let bad = CoeffModule::new(1, vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
    let err = specialize(&cx, &bad, SpecializeOptions::default()).unwrap_err();
    assert!(matches!(err, arith_torsion::Error::RelatorViolated { .. }), "{err:?}");
}

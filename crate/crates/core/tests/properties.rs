mod common;

use arith_torsion::complex::CochainComplex;
use arith_torsion::linalg::{bareiss_det, snf, IntMatrix, SnfOptions, SparseIntMatrix};
use arith_torsion::reps::{sym_power_action, HighestWeight, RootSystem};
use arith_torsion::torsion::{
    random_acyclic, random_unimodular, reidemeister_torsion_with, simple_expansion, verify_cochain,
};
use common::{cofactor_det, dense_snf, minors_snf, sparse};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec((-bound..=bound).prop_map(BigInt::from), c), r)
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec((-bound..=bound).prop_map(BigInt::from), n), n)
    })
}

/// Shapes with alternating sum zero, built from split ranks `k_q`.
fn acyclic_shape() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..4, 1..4).prop_map(|ks| {
        let mut shape = vec![ks[0]];
        for w in ks.windows(2) {
            shape.push(w[0] + w[1]);
        }
        shape.push(*ks.last().unwrap());
        shape
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_dense_oracle(a in matrix(7, 9)) {
        prop_assert_eq!(snf(&sparse(&a)).unwrap().divisors, dense_snf(a));
    }

    #[test]
    fn snf_matches_minor_gcds(a in matrix(4, 6)) {
        prop_assert_eq!(snf(&sparse(&a)).unwrap().divisors, minors_snf(&a));
    }

    #[test]
    fn snf_divisors_chain(a in matrix(6, 20)) {
        let d = snf(&sparse(&a)).unwrap().divisors;
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn snf_is_unimodular_invariant(a in matrix(6, 9), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = IntMatrix::from_rows(&a);
        let (u, _) = random_unimodular(m.rows(), 3 * m.rows(), &mut rng);
        let (v, _) = random_unimodular(m.cols(), 3 * m.cols(), &mut rng);
        let conj = u.mul(&m).mul(&v);
        prop_assert_eq!(
            snf(&SparseIntMatrix::from_dense(&conj)).unwrap().divisors,
            snf(&sparse(&a)).unwrap().divisors
        );
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(a in square(6, 12)) {
        prop_assert_eq!(bareiss_det(a.clone()), cofactor_det(&a));
    }

    #[test]
    fn unimodular_pairs_are_inverse(n in 1usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, inv) = random_unimodular(n, 2 * n, &mut rng);
        prop_assert!(u.mul(&inv).is_identity());
        prop_assert_eq!(u.det().abs(), BigInt::from(1));
    }

    #[test]
    fn sym_power_is_functorial(
        a in square(3, 3).prop_filter("3x3", |a| a.len() == 3),
        b in square(3, 3).prop_filter("3x3", |b| b.len() == 3),
        m in 0usize..5,
    ) {
        let (a, b) = (IntMatrix::from_rows(&a), IntMatrix::from_rows(&b));
        prop_assert_eq!(sym_power_action(&a.mul(&b), m), sym_power_action(&a, m).mul(&sym_power_action(&b, m)));
        prop_assert!(sym_power_action(&IntMatrix::identity(3), m).is_identity());
    }

    #[test]
    fn weyl_dim_is_theta_invariant_a2(t1 in 0i64..40, t2 in 0i64..40) {
        let w = HighestWeight::a2(t1, t2).unwrap();
        prop_assert_eq!(w.dim(), w.theta_twist().dim());
    }

    #[test]
    fn weyl_dim_is_theta_invariant_d(mut ks in prop::collection::vec(0i64..6, 2..5), neg in any::<bool>()) {
        ks.sort_unstable_by(|x, y| y.cmp(x));
        let n = ks.len() - 1;
        if neg {
            ks[n] = -ks[n];
        }
        let w = HighestWeight::new(RootSystem::D { n }, ks).unwrap();
        prop_assert_eq!(w.dim(), w.theta_twist().dim());
    }

    #[test]
    fn torsion_identity_on_random_complexes(shape in acyclic_shape(), seed in any::<u64>()) {
        let cx = random_acyclic(&shape, seed).unwrap();
        prop_assert!(verify_cochain(&cx, &SnfOptions::default(), 20).unwrap().equal);
    }

    #[test]
    fn torsion_is_multiplicative(s1 in acyclic_shape(), s2 in acyclic_shape(), seed in any::<u64>()) {
        let a = random_acyclic(&s1, seed).unwrap();
        let b = random_acyclic(&s2, seed.wrapping_add(1)).unwrap();
        let t = |c: &CochainComplex| reidemeister_torsion_with(c, 20).unwrap().t_squared;
        prop_assert_eq!(t(&a.direct_sum(&b)), t(&a) * t(&b));
    }

    #[test]
    fn torsion_survives_simple_expansion(shape in acyclic_shape(), seed in any::<u64>(), q in 0usize..4) {
        let cx = random_acyclic(&shape, seed).unwrap();
        let q = q % (shape.len() - 1);
        let t = |c: &CochainComplex| reidemeister_torsion_with(c, 20).unwrap().t_squared;
        prop_assert_eq!(t(&simple_expansion(&cx, q).unwrap()), t(&cx));
    }

    #[test]
    fn torsion_survives_basis_change(shape in acyclic_shape(), seed in any::<u64>()) {
        let cx = random_acyclic(&shape, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let bases: Vec<IntMatrix> = shape.iter().map(|&n| random_unimodular(n, 2 * n, &mut rng).0).collect();
        let moved = cx.change_basis(&bases).unwrap();
        let t = |c: &CochainComplex| reidemeister_torsion_with(c, 20).unwrap().t_squared;
        prop_assert_eq!(t(&moved), t(&cx));
        let h = |c: &CochainComplex| c.cohomology().unwrap();
        prop_assert_eq!(h(&moved), h(&cx));
    }
}

#[test]
fn dense_oracle_sanity() {
    let a = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
    assert_eq!(dense_snf(a.clone()), vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(minors_snf(&a), vec![BigInt::from(2), BigInt::from(4)]);
}

//! Property-based invariants. Matrices are generated from proptest-driven
//! seeds through the crate's own deterministic streams, so failures shrink
//! to a reproducible seed.

use proptest::prelude::*;

use centriole::algebra::haar;
use centriole::algebra::matrix::{diff_norm, max_abs, to_complex, CMat, C};
use centriole::algebra::{
    exp_skew_hermitian, geodesic_distance, log_unitary_principal, pfaffian_sign,
    structure_to_projection, MetricSpec,
};
use centriole::rng::stream;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quaternion_block_embedding_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = stream(seed, "prop/qhom", 0);
        let a = haar::gaussian_quaternion(3, 3, &mut rng);
        let b = haar::gaussian_quaternion(3, 3, &mut rng);
        let lhs = a.mul(&b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!(diff_norm(&lhs, &rhs) < 1e-11);
        // Adjoints embed to adjoints.
        let lhs = a.adjoint().to_complex();
        let rhs = a.to_complex().adjoint().into_owned();
        prop_assert!(diff_norm(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn exp_and_log_are_mutually_inverse(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = stream(seed, "prop/explog", n as u64);
        let x = haar::random_skew_hermitian(n, 2.0, &mut rng);
        let u = exp_skew_hermitian(&x, 1e-9).unwrap();
        // exp(X)·exp(-X) = I
        let back = exp_skew_hermitian(&(-&x), 1e-9).unwrap();
        prop_assert!(diff_norm(&(&u * &back), &CMat::identity(n, n)) < 1e-11);
        // Round trip through the principal branch.
        let logu = log_unitary_principal(&u, 1e-9).unwrap();
        let again = exp_skew_hermitian(&logu, 1e-9).unwrap();
        prop_assert!(diff_norm(&again, &u) < 1e-10);
    }

    #[test]
    fn distance_is_bi_invariant_and_symmetric(seed in any::<u64>()) {
        let mut rng = stream(seed, "prop/biinv", 0);
        let a = haar::random_unitary(5, &mut rng);
        let b = haar::random_unitary(5, &mut rng);
        let g = haar::random_unitary(5, &mut rng);
        let d0 = geodesic_distance(&a, &b, MetricSpec::STANDARD, 1e-9).unwrap();
        let dl = geodesic_distance(&(&g * &a), &(&g * &b), MetricSpec::STANDARD, 1e-9).unwrap();
        let dr = geodesic_distance(&(&a * &g), &(&b * &g), MetricSpec::STANDARD, 1e-9).unwrap();
        let ds = geodesic_distance(&b, &a, MetricSpec::STANDARD, 1e-9).unwrap();
        prop_assert!((d0 - dl).abs() < 1e-9);
        prop_assert!((d0 - dr).abs() < 1e-9);
        prop_assert!((d0 - ds).abs() < 1e-9);
    }

    #[test]
    fn pfaffian_sign_is_an_so_invariant(seed in any::<u64>()) {
        let mut rng = stream(seed, "prop/pf", 0);
        let g = haar::gaussian_real(6, 6, &mut rng);
        let skew = (&g - g.transpose()).scale(0.5);
        let s0 = pfaffian_sign(&skew, 1e-12).unwrap();
        let o = haar::random_special_orthogonal(6, &mut rng);
        let s1 = pfaffian_sign(&(&o * &skew * o.transpose()), 1e-10).unwrap();
        prop_assert_eq!(s0, s1);
    }

    #[test]
    fn projection_structure_dictionary_round_trips(seed in any::<u64>(), q in 1usize..5) {
        let mut rng = stream(seed, "prop/projdict", q as u64);
        let u = haar::random_unitary(2 * q, &mut rng);
        let j = &u * centriole::algebra::matrix::a_block(q) * u.adjoint();
        let p = structure_to_projection(&j, 1e-9).unwrap();
        // P is a rank-q Hermitian idempotent and reproduces J.
        prop_assert!(max_abs(&(&p * &p - &p)) < 1e-11);
        prop_assert!((p.trace().re - q as f64).abs() < 1e-10);
        let back = centriole::algebra::projection_to_structure(&p, 1e-9).unwrap();
        prop_assert!(diff_norm(&back, &j) < 1e-11);
    }

    #[test]
    fn sampled_structures_are_shortest_midpoints(seed in any::<u64>()) {
        use centriole::chains::{centrosome_membership, Ambient, CentrosomeClass};
        let dim = 8;
        let mut rng = stream(seed, "prop/midpoints", 0);
        let g = haar::random_unitary(dim, &mut rng);
        let j = &g * centriole::algebra::matrix::a_block(dim / 2) * g.adjoint();
        let id = CMat::identity(dim, dim);
        let class = centrosome_membership(
            &j,
            &id,
            &(&id * C::new(-1.0, 0.0)),
            Ambient::Unitary { dim },
            1e-10,
        )
        .unwrap();
        prop_assert_eq!(class, CentrosomeClass::MemberShortest);
    }

    #[test]
    fn realified_unitaries_are_special_orthogonal(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = stream(seed, "prop/realify", n as u64);
        let u = haar::random_unitary(n, &mut rng);
        let r = centriole::algebra::realify_complex(&u);
        let c = to_complex(&r);
        prop_assert!(centriole::algebra::matrix::unitary_residual(&c) < 1e-11);
        prop_assert!(
            (centriole::algebra::matrix::determinant(&c) - C::new(1.0, 0.0)).norm() < 1e-9
        );
    }
}

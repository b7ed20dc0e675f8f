use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use qsep::geometry::reshape_to_2x2;
use qsep::linalg::det2;
use qsep::{
    gen_plane_case, is_product_vector, product_states_in_plane, random_density,
    random_product_vector, schmidt, CMatrix, CVector, Dims, PlaneKind, PlaneProductResult,
    ProductVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn haar_vector(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_| {
        let (a, b): (f64, f64) = (rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        Complex64::new(a, b)
    });
    v.normalized().unwrap()
}

fn su2(a: f64, b: f64, c: f64) -> CMatrix {
    let (x, y) = (
        Complex64::from_polar(a.cos(), b),
        Complex64::from_polar(a.sin(), c),
    );
    CMatrix::from_rows(&[vec![x, -y.conj()], vec![y, x.conj()]]).unwrap()
}

fn plane_products(r: &PlaneProductResult) -> Vec<ProductVector> {
    match r {
        PlaneProductResult::AllProduct => Vec::new(),
        PlaneProductResult::Roots(v) => v.iter().map(|r| r.vector.clone()).collect(),
    }
}

#[test]
fn product_vectors_have_vanishing_determinant() {
    for seed in 0..1000 {
        let v = random_product_vector(seed, Dims::QUBITS).ket();
        assert!(det2(&reshape_to_2x2(&v).unwrap()).norm() <= 1e-12);
    }
}

#[test]
fn product_verdict_agrees_with_schmidt() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let v = haar_vector(&mut rng, 4);
        let s = schmidt(&v).unwrap();
        assert_eq!(is_product_vector(&v, 1e-12), s.coefficients[1] <= 1e-10);
        assert!(s.reconstruct().max_abs_diff(&v) <= 1e-12);
    }
}

#[test]
fn every_plane_contains_a_product_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let (a, b) = (haar_vector(&mut rng, 4), haar_vector(&mut rng, 4));
        match product_states_in_plane(&a, &b).unwrap() {
            PlaneProductResult::AllProduct => {}
            PlaneProductResult::Roots(roots) => {
                assert!(!roots.is_empty());
                for r in roots {
                    assert!(is_product_vector(&r.vector.ket(), 1e-10));
                }
            }
        }
    }
}

#[test]
fn planes_through_two_products_contain_only_those() {
    for seed in 0..300u64 {
        let p = random_product_vector(2 * seed, Dims::QUBITS);
        let q = random_product_vector(2 * seed + 1, Dims::QUBITS);
        let found = plane_products(&product_states_in_plane(&p.ket(), &q.ket()).unwrap());
        assert_eq!(found.len(), 2, "seed {seed}");
        for g in [&p, &q] {
            assert!(
                found.iter().any(|f| f.projective_distance(g) <= 1e-9),
                "seed {seed}"
            );
        }
    }
    let shared = CVector::from_real(&[0.6, 0.8]);
    let p = ProductVector::new(shared.clone(), CVector::from_real(&[1.0, 0.0])).unwrap();
    let q = ProductVector::new(shared, CVector::from_real(&[0.3, 0.7])).unwrap();
    assert!(matches!(
        product_states_in_plane(&p.ket(), &q.ket()).unwrap(),
        PlaneProductResult::AllProduct
    ));
}

#[test]
fn p1_planes_never_have_a_single_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..200 {
        let angles = [
            rng.gen_range(0.0..=FRAC_PI_2),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..=FRAC_PI_2),
            rng.gen_range(0.0..2.0 * PI),
        ];
        let (v1, v2) = gen_plane_case(PlaneKind::P1, angles, Some(seed)).unwrap();
        assert_ne!(
            product_states_in_plane(&v1, &v2).unwrap().root_count(),
            Some(1)
        );
    }
}

#[test]
fn p2_planes_with_b_zero_have_one_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..200 {
        let angles = [
            rng.gen_range(0.01..FRAC_PI_2 - 0.01),
            0.0,
            rng.gen_range(0.0..2.0 * PI),
            0.0,
        ];
        let (v1, v2) = gen_plane_case(PlaneKind::P2, angles, Some(seed)).unwrap();
        assert_eq!(
            product_states_in_plane(&v1, &v2).unwrap().root_count(),
            Some(1),
            "{angles:?}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plane_solutions_are_covariant(
        seed in 0u64..10_000,
        ua in prop::array::uniform3(0.0f64..std::f64::consts::TAU),
        ub in prop::array::uniform3(0.0f64..std::f64::consts::TAU),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (haar_vector(&mut rng, 4), haar_vector(&mut rng, 4));
        let u = su2(ua[0], ua[1], ua[2]).kron(&su2(ub[0], ub[1], ub[2])).unwrap();
        let before = plane_products(&product_states_in_plane(&a, &b).unwrap());
        let after = plane_products(&product_states_in_plane(&u.mul_vec(&a), &u.mul_vec(&b)).unwrap());
        prop_assert_eq!(before.len(), after.len());
        for p in &before {
            let mapped = u.mul_vec(&p.ket());
            let hit = after.iter().any(|q| 1.0 - q.ket().dot(&mapped).norm() <= 1e-10);
            prop_assert!(hit);
        }
    }

    #[test]
    fn range_products_lie_in_range(seed in 0u64..5000, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        use qsep::{product_in_range, SphereParam, ToleranceConfig};
        let rho = random_density(seed, 3, Dims::QUBITS).unwrap();
        let v = product_in_range(rho.matrix(), SphereParam::Finite(Complex64::new(re, im)), &ToleranceConfig::default()).unwrap();
        prop_assert!(is_product_vector(&v.ket(), 1e-12));
    }
}

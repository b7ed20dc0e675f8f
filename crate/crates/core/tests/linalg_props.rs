use num_complex::Complex64;
use proptest::prelude::*;
use qsep::linalg::{herm_eig, pinv_psd, quadratic_roots, Projective, RootSet};
use qsep::state::partial_trace_b;
use qsep::{partial_transpose_b, random_density, CMatrix, DensityMatrix, Dims, ToleranceConfig};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn hermitian() -> impl Strategy<Value = CMatrix> {
    (1usize..=6)
        .prop_flat_map(|n| prop::collection::vec(complex(), n * n).prop_map(move |v| (n, v)))
        .prop_map(|(n, v)| CMatrix::from_vec(n, n, v).unwrap().hermitian_part())
}

fn psd(n: usize, rank: usize, seed: u64) -> CMatrix {
    let dims = match n {
        4 => Dims::QUBITS,
        _ => Dims::QUBIT_QUTRIT,
    };
    random_density(seed, rank, dims).unwrap().into_matrix()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eigendecomposition_reconstructs(m in hermitian()) {
        let eig = herm_eig(&m).unwrap();
        let scale = m.norm_max().max(1.0);
        prop_assert!(eig.reconstruct().max_abs_diff(&m) <= 1e-11 * scale);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let v = &eig.eigenvectors;
        let gram = &v.adjoint() * v;
        prop_assert!(gram.max_abs_diff(&CMatrix::identity(m.rows())) <= 1e-12);
    }

    #[test]
    fn quadratic_roots_solve_the_form(a in complex(), b in complex(), c in complex()) {
        let scale = a.norm().max(b.norm()).max(c.norm());
        let eval = |p: &Projective| {
            let n = (p.alpha.norm_sqr() + p.beta.norm_sqr()).sqrt();
            let (x, y) = (p.alpha / n, p.beta / n);
            (a * x * x + b * x * y + c * y * y).norm()
        };
        match quadratic_roots(a, b, c, 1e-10) {
            RootSet::TwoRoots(r) => {
                for p in &r {
                    prop_assert!(eval(p) <= 1e-10 * scale);
                }
            }
            RootSet::OneDoubleRoot(p) => prop_assert!(eval(&p) <= 1e-10 * scale),
            RootSet::AllSolutions => prop_assert!(scale <= 1e-10),
        }
    }
}

#[test]
fn penrose_identities() {
    for (n, seed) in [(4usize, 0u64), (6, 1)] {
        for rank in 1..=n {
            for s in 0..20 {
                let a = psd(n, rank, seed * 1000 + s);
                let p = pinv_psd(&a, 1e-9).unwrap();
                let apa = &(&a * &p) * &a;
                let pap = &(&p * &a) * &p;
                let ap = &a * &p;
                let pa = &p * &a;
                let scale = p.norm_max().max(1.0);
                assert!(apa.max_abs_diff(&a) <= 1e-10 * scale, "n {n} rank {rank}");
                assert!(
                    pap.max_abs_diff(&p) <= 1e-10 * scale * scale,
                    "n {n} rank {rank}"
                );
                assert!(ap.max_abs_diff(&ap.adjoint()) <= 1e-10 * scale);
                assert!(pa.max_abs_diff(&pa.adjoint()) <= 1e-10 * scale);
            }
        }
    }
}

#[test]
fn partial_transpose_keeps_product_spectra() {
    let tol = ToleranceConfig::default();
    for seed in 0..200u64 {
        let a = partial_trace_b(&random_density(seed, 2, Dims::QUBITS).unwrap());
        let dims = if seed % 2 == 0 {
            Dims::QUBITS
        } else {
            Dims::QUBIT_QUTRIT
        };
        let b =
            qsep::state::partial_trace_a(&random_density(seed + 1, dims.total(), dims).unwrap());
        let rho = DensityMatrix::product(&a, &b, &tol).unwrap();
        let s1 = herm_eig(rho.matrix()).unwrap().eigenvalues;
        let s2 = herm_eig(&partial_transpose_b(&rho)).unwrap().eigenvalues;
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() <= 1e-12, "seed {seed}");
        }
    }
}

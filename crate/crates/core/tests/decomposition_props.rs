use qsep::{
    decompose, decompose_inseparable, decompose_separable, is_product_vector, ppt_check,
    random_density, random_separable, schmidt, verify_decomposition, DecomposeOptions,
    DensityMatrix, Dims, ToleranceConfig, Verdict,
};

fn opts() -> DecomposeOptions {
    DecomposeOptions::default()
}

fn npt_states(n: usize) -> Vec<(u64, DensityMatrix)> {
    let tol = ToleranceConfig::default();
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < n {
        let rank = 1 + (seed % 4) as usize;
        let rho = random_density(seed, rank, Dims::QUBITS).unwrap();
        if ppt_check(&rho, &tol).unwrap().verdict == Verdict::Inseparable {
            out.push((seed, rho));
        }
        seed += 1;
    }
    out
}

#[test]
fn random_separable_states_need_at_most_five_terms() {
    for seed in 0..60u64 {
        let k = 1 + (seed % 16) as usize;
        let rho = random_separable(seed, k, Dims::QUBITS).unwrap();
        let r = decompose_separable(&rho, &opts()).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let d = &r.decomposition;
        assert!(d.len() <= 5, "seed {seed}: {} terms", d.len());
        assert!(
            d.terms.iter().all(|t| t.weight > 0.0 && t.weight <= 1.0),
            "seed {seed}"
        );
        assert!((d.weight_sum() - 1.0).abs() <= 1e-9, "seed {seed}");
        assert!(
            r.reconstruction_error <= 1e-7,
            "seed {seed}: {}",
            r.reconstruction_error
        );
        assert!(
            verify_decomposition(d, &rho, &ToleranceConfig::new(1e-9, 1e-9, 1e-7).unwrap()).passed
        );
    }
}

#[test]
fn rank_sequence_strictly_decreases() {
    for seed in 0..30u64 {
        let rho = random_separable(seed, 8, Dims::QUBITS).unwrap();
        let r = decompose_separable(&rho, &opts()).unwrap();
        let mut prev = (4usize, 4usize);
        for s in &r.steps {
            assert!(s.threshold > 0.0 && s.threshold < 1.0);
            assert!(s.ranks_after.0 <= s.ranks_before.0 && s.ranks_after.1 <= s.ranks_before.1);
            assert!(s.ranks_after.0 + s.ranks_after.1 < s.ranks_before.0 + s.ranks_before.1);
            assert!(s.ranks_before.0 <= prev.0 && s.ranks_before.1 <= prev.1);
            prev = s.ranks_after;
        }
    }
}

#[test]
fn rank_two_ppt_states_split_into_their_generators() {
    let tol = ToleranceConfig::default();
    for seed in 0..40u64 {
        let rho = random_separable(seed, 2, Dims::QUBITS).unwrap();
        let v = ppt_check(&rho, &tol).unwrap();
        assert_eq!(
            v.pt_spectrum.iter().filter(|&&l| l > 1e-9).count(),
            2,
            "seed {seed}"
        );
        let r = decompose_separable(&rho, &opts()).unwrap();
        assert_eq!(r.decomposition.len(), 2, "seed {seed}");
        assert!(r.reconstruction_error <= 1e-7);
    }
}

#[test]
fn npt_states_get_at_most_six_terms() {
    for (seed, rho) in npt_states(60) {
        let r = decompose_inseparable(&rho, &opts()).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let d = &r.decomposition;
        let det = r.inseparable.as_ref().unwrap();
        assert!(d.len() <= 6, "seed {seed}");
        let neg = d.negative_count();
        assert!((1..=2).contains(&neg), "seed {seed}: {neg}");
        assert!(
            r.reconstruction_error <= 1e-7,
            "seed {seed}: {}",
            r.reconstruction_error
        );
        assert!((d.weight_sum() - 1.0).abs() <= 1e-9, "seed {seed}");

        let sf = schmidt(&det.negative_eigenvector).unwrap();
        for t in d.terms.iter().filter(|t| t.weight < 0.0) {
            let hit = (0..2).any(|k| {
                sf.product(k)
                    .partial_conjugate()
                    .projective_distance(&t.vector)
                    <= 1e-8
            });
            assert!(
                hit,
                "seed {seed}: negative term is not a conjugated Schmidt product"
            );
        }
        for t in &d.terms {
            assert!(is_product_vector(&t.vector.ket(), 1e-12));
        }
    }
}

#[test]
fn decompose_dispatch_matches_verdict() {
    let tol = ToleranceConfig::default();
    for seed in 0..40u64 {
        let rho = random_density(seed, 4, Dims::QUBITS).unwrap();
        let verdict = ppt_check(&rho, &tol).unwrap().verdict;
        let r = decompose(&rho, &opts()).unwrap();
        assert_eq!(r.inseparable.is_some(), verdict == Verdict::Inseparable);
        assert!(r.reconstruction_error <= 1e-7);
    }
}

#[test]
fn seeds_change_nothing_but_search_order() {
    let rho = random_separable(7, 9, Dims::QUBITS).unwrap();
    let a = decompose(&rho, &DecomposeOptions { seed: 1, ..opts() }).unwrap();
    let b = decompose(&rho, &DecomposeOptions { seed: 1, ..opts() }).unwrap();
    assert_eq!(a.decomposition.terms.len(), b.decomposition.terms.len());
    for (x, y) in a.decomposition.terms.iter().zip(&b.decomposition.terms) {
        assert_eq!(x.weight.to_bits(), y.weight.to_bits());
    }
    let c = decompose(&rho, &DecomposeOptions { seed: 99, ..opts() }).unwrap();
    assert!(c.reconstruction_error <= 1e-7);
}

#[test]
fn subtraction_threshold_is_exact() {
    use qsep::linalg::herm_eig;
    use qsep::subtraction_threshold;
    for seed in 0..200u64 {
        let rank = 1 + (seed % 4) as usize;
        let rho = random_density(seed, rank, Dims::QUBITS).unwrap();
        let eig = herm_eig(rho.matrix()).unwrap();
        // A vector in the range: a combination of the occupied eigenvectors.
        let mut v = eig.eigenvector(3);
        if rank > 1 {
            v = &v + &eig.eigenvector(4 - rank).scale(0.7);
        }
        let v = v.normalized().unwrap();
        let lambda = subtraction_threshold(rho.matrix(), &v, 1e-9).unwrap();
        assert!(lambda > 0.0, "seed {seed}");
        let at = rho.matrix() - &v.projector().scale(lambda);
        let min_at = herm_eig(&at).unwrap().min();
        assert!(min_at.abs() <= 1e-10, "seed {seed}: {min_at:e}");
        let inside = rho.matrix() - &v.projector().scale(0.999 * lambda);
        assert!(herm_eig(&inside).unwrap().min() >= -1e-12, "seed {seed}");
    }
}

#[test]
fn positive_part_of_inseparable_decomposition_is_ppt() {
    use qsep::{mixture, Term};
    for (seed, rho) in npt_states(40) {
        let r = decompose_inseparable(&rho, &opts()).unwrap();
        let pos: Vec<Term> = r
            .decomposition
            .terms
            .iter()
            .filter(|t| t.weight > 0.0)
            .cloned()
            .collect();
        let total: f64 = pos.iter().map(|t| t.weight).sum();
        let scaled: Vec<Term> = pos
            .into_iter()
            .map(|t| Term {
                weight: t.weight / total,
                vector: t.vector,
            })
            .collect();
        let sep = mixture(&scaled).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(
            ppt_check(&sep, &ToleranceConfig::default())
                .unwrap()
                .verdict,
            Verdict::Separable,
            "seed {seed}"
        );
    }
}

//! Bipartite density matrices, product vectors and state constructors.
//!
//! Basis ordering is the computational product basis: `|i⟩_a ⊗ |μ⟩_b` sits at
//! flat index `i * dim_b + μ`. Every module relies on this.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result, Violation};
use crate::linalg::{herm_eig, CMatrix, CVector};

/// Subsystem dimensions of a bipartite system: 2×2 or 2×3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
}

impl Dims {
    pub const QUBITS: Dims = Dims { a: 2, b: 2 };
    pub const QUBIT_QUTRIT: Dims = Dims { a: 2, b: 3 };

    pub fn new(a: usize, b: usize) -> Result<Self> {
        match (a, b) {
            (2, 2) | (2, 3) => Ok(Dims { a, b }),
            _ => Err(Error::UnsupportedDimension { dim_a: a, dim_b: b }),
        }
    }

    pub fn total(self) -> usize {
        self.a * self.b
    }

    pub fn is_qubits(self) -> bool {
        self == Self::QUBITS
    }

    /// Flat index of `|i⟩_a ⊗ |μ⟩_b`.
    #[inline]
    pub fn index(self, i: usize, mu: usize) -> usize {
        i * self.b + mu
    }
}

/// Numerical tolerances shared by validation, rank decisions and
/// reconstruction checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub psd_tol: f64,
    pub rank_tol: f64,
    pub recon_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            psd_tol: 1e-9,
            rank_tol: 1e-9,
            recon_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn new(psd_tol: f64, rank_tol: f64, recon_tol: f64) -> Result<Self> {
        let t = ToleranceConfig {
            psd_tol,
            rank_tol,
            recon_tol,
        };
        t.check()?;
        Ok(t)
    }

    /// Defaults multiplied by a common factor.
    pub fn scaled(factor: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(
            d.psd_tol * factor,
            d.rank_tol * factor,
            d.recon_tol * factor,
        )
    }

    pub fn check(&self) -> Result<()> {
        for (name, v) in [
            ("psd_tol", self.psd_tol),
            ("rank_tol", self.rank_tol),
            ("recon_tol", self.recon_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A validated density matrix on `C^{dim_a} ⊗ C^{dim_b}`.
///
/// The stored matrix is the Hermitian part of the input, so it is exactly
/// Hermitian; trace and positivity hold within the validating tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity, reporting every
    /// violated invariant at once.
    pub fn validate(matrix: CMatrix, dims: Dims, tol: &ToleranceConfig) -> Result<Self> {
        let d = dims.total();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::InvalidInput(format!(
                "expected a {d}x{d} matrix for {}x{} dims, got {}x{}",
                dims.a,
                dims.b,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let mut violations = Vec::new();
        let dev = matrix.hermitian_deviation();
        if dev > tol.psd_tol {
            violations.push(Violation::NotHermitian { max_deviation: dev });
        }
        let h = matrix.hermitian_part();
        let tr = h.trace().re;
        if (tr - 1.0).abs() > tol.psd_tol {
            violations.push(Violation::TraceNotOne { trace: tr });
        }
        let min = herm_eig(&h)?.min();
        if min < -tol.psd_tol {
            violations.push(Violation::NotPositive {
                min_eigenvalue: min,
            });
        }
        if violations.is_empty() {
            Ok(DensityMatrix { dims, matrix: h })
        } else {
            Err(Error::InvalidDensity(violations))
        }
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(matrix: CMatrix, dims: Dims) -> Self {
        debug_assert_eq!(matrix.rows(), dims.total());
        DensityMatrix {
            dims,
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `ρ_a ⊗ ρ_b` for two single-subsystem density matrices.
    pub fn product(rho_a: &CMatrix, rho_b: &CMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let dims = Dims::new(rho_a.rows(), rho_b.rows())?;
        Self::validate(rho_a.kron(rho_b)?, dims, tol)
    }

    /// `|ψ⟩⟨ψ|` for a nonzero vector (normalized internally).
    pub fn pure(psi: &CVector, dims: Dims) -> Result<Self> {
        if psi.dim() != dims.total() {
            return Err(Error::InvalidInput(format!(
                "vector of dimension {} does not match {}x{}",
                psi.dim(),
                dims.a,
                dims.b
            )));
        }
        let psi = psi
            .normalized()
            .ok_or_else(|| Error::InvalidInput("zero vector".into()))?;
        Ok(Self::from_trusted(psi.projector(), dims))
    }

    pub fn maximally_mixed(dims: Dims) -> Self {
        let d = dims.total();
        Self::from_trusted(CMatrix::identity(d).scale(1.0 / d as f64), dims)
    }
}

/// Unit-norm product ket `|e⟩ ⊗ |f⟩`.
///
/// Phases are fixed so the first nonzero component of `e` and of `f` is real
/// nonnegative; the represented ket changes only by a global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    e: CVector,
    f: CVector,
}

const PHASE_TOL: f64 = 1e-12;

impl ProductVector {
    pub fn new(e: CVector, f: CVector) -> Result<Self> {
        Dims::new(e.dim(), f.dim())?;
        let mut e = e
            .normalized()
            .ok_or_else(|| Error::InvalidInput("zero local vector e".into()))?;
        let mut f = f
            .normalized()
            .ok_or_else(|| Error::InvalidInput("zero local vector f".into()))?;
        e.fix_phase_first(PHASE_TOL);
        f.fix_phase_first(PHASE_TOL);
        Ok(ProductVector { e, f })
    }

    /// Basis product `|i⟩ ⊗ |μ⟩`.
    pub fn basis(dims: Dims, i: usize, mu: usize) -> Self {
        ProductVector {
            e: CVector::basis(dims.a, i),
            f: CVector::basis(dims.b, mu),
        }
    }

    pub fn e(&self) -> &CVector {
        &self.e
    }

    pub fn f(&self) -> &CVector {
        &self.f
    }

    pub fn dims(&self) -> Dims {
        Dims {
            a: self.e.dim(),
            b: self.f.dim(),
        }
    }

    pub fn ket(&self) -> CVector {
        self.e.kron(&self.f).expect("product dims are validated")
    }

    pub fn projector(&self) -> CMatrix {
        self.ket().projector()
    }

    /// `|e⟩ ⊗ |f*⟩`, the image under complex conjugation on subsystem B.
    pub fn partial_conjugate(&self) -> ProductVector {
        let mut f = self.f.conj();
        f.fix_phase_first(PHASE_TOL);
        ProductVector {
            e: self.e.clone(),
            f,
        }
    }

    /// `1 - |⟨self|other⟩|`, zero iff the kets agree up to phase.
    pub fn projective_distance(&self, other: &ProductVector) -> f64 {
        (1.0 - self.ket().dot(&other.ket()).norm()).max(0.0)
    }
}

/// One weighted product projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub weight: f64,
    pub vector: ProductVector,
}

/// `Σ w_i |e_i f_i⟩⟨e_i f_i|`; negative weights mark an inseparable state.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDecomposition {
    pub dims: Dims,
    pub terms: Vec<Term>,
}

impl WeightedDecomposition {
    pub fn new(dims: Dims, terms: Vec<Term>) -> Self {
        WeightedDecomposition { dims, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.terms.iter().filter(|t| t.weight < 0.0).count()
    }

    /// Recomputes `Σ w_i P_i`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.dims.total();
        let mut m = CMatrix::zeros(d, d);
        for t in &self.terms {
            m = &m + &t.vector.projector().scale(t.weight);
        }
        m
    }
}

/// Reduced state on A, `Tr_b ρ`.
pub fn partial_trace_b(rho: &DensityMatrix) -> CMatrix {
    trace_out_b(rho.matrix(), rho.dims())
}

/// Reduced state on B, `Tr_a ρ`.
pub fn partial_trace_a(rho: &DensityMatrix) -> CMatrix {
    trace_out_a(rho.matrix(), rho.dims())
}

pub(crate) fn trace_out_b(m: &CMatrix, dims: Dims) -> CMatrix {
    CMatrix::from_fn(dims.a, dims.a, |i, j| {
        (0..dims.b)
            .map(|mu| m[(dims.index(i, mu), dims.index(j, mu))])
            .sum()
    })
}

pub(crate) fn trace_out_a(m: &CMatrix, dims: Dims) -> CMatrix {
    CMatrix::from_fn(dims.b, dims.b, |mu, nu| {
        (0..dims.a)
            .map(|i| m[(dims.index(i, mu), dims.index(i, nu))])
            .sum()
    })
}

/// True iff `‖ρ - Tr_b ρ ⊗ Tr_a ρ‖_max ≤ recon_tol`.
pub fn is_product_state(rho: &DensityMatrix, tol: &ToleranceConfig) -> bool {
    let prod = partial_trace_b(rho)
        .kron(&partial_trace_a(rho))
        .expect("reduced dims multiply back to the full dimension");
    prod.max_abs_diff(rho.matrix()) <= tol.recon_tol
}

/// Von Neumann entropy `-Tr ρ ln ρ` with `0 ln 0 = 0`; eigenvalues are
/// clipped to `[0, 1]` first.
pub fn von_neumann_entropy(m: &CMatrix) -> Result<f64> {
    let eig = herm_eig(m)?;
    Ok(eig
        .eigenvalues
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum())
}

/// Index of correlation `I_c = Tr ρ ln ρ - Tr ρ_a ln ρ_a - Tr ρ_b ln ρ_b`
/// (natural log), i.e. `S(ρ_a) + S(ρ_b) - S(ρ)`.
pub fn index_of_correlation(rho: &DensityMatrix) -> f64 {
    let s = |m: &CMatrix| von_neumann_entropy(m).expect("validated states are finite");
    s(&partial_trace_b(rho)) + s(&partial_trace_a(rho)) - s(rho.matrix())
}

/// The four Bell vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

/// Bell vector in the ordering (00, 01, 10, 11):
/// `Ψ± = (|01⟩ ± |10⟩)/√2`, `Φ± = (|00⟩ ± |11⟩)/√2`.
pub fn bell_vector(kind: BellKind) -> CVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = match kind {
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
    };
    CVector::from_real(&v)
}

/// Werner state `x |Ψ-⟩⟨Ψ-| + (1 - x)/4 · Σ_Bell |B⟩⟨B|`, which equals
/// `x |Ψ-⟩⟨Ψ-| + (1 - x) I/4`.
pub fn make_werner(x: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!(
            "singlet fraction {x} outside [0, 1]"
        )));
    }
    let singlet = bell_vector(BellKind::PsiMinus).projector();
    let mixed = CMatrix::identity(4).scale(0.25);
    let m = &singlet.scale(x) + &mixed.scale(1.0 - x);
    Ok(DensityMatrix::from_trusted(m, Dims::QUBITS))
}

/// Convex mixture `Σ w_i |e_i f_i⟩⟨e_i f_i|`.
pub fn mixture(terms: &[Term]) -> Result<DensityMatrix> {
    let first = terms
        .first()
        .ok_or_else(|| Error::InvalidInput("empty mixture".into()))?;
    let dims = first.vector.dims();
    if terms.iter().any(|t| t.vector.dims() != dims) {
        return Err(Error::InvalidInput(
            "mixture terms have different dims".into(),
        ));
    }
    if terms
        .iter()
        .any(|t| !(t.weight >= 0.0 && t.weight.is_finite()))
    {
        return Err(Error::InvalidInput(
            "mixture weights must be nonnegative".into(),
        ));
    }
    let sum: f64 = terms.iter().map(|t| t.weight).sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "mixture weights sum to {sum}, not 1"
        )));
    }
    let m = WeightedDecomposition::new(dims, terms.to_vec()).reconstruct();
    Ok(DensityMatrix::from_trusted(m, dims))
}

fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_fn(dim, |_| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Uniformly distributed unit vector on the complex sphere.
pub(crate) fn sphere_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    loop {
        if let Some(v) = gaussian_vector(rng, dim).normalized() {
            return v;
        }
    }
}

pub(crate) fn sample_product_vector<R: Rng>(rng: &mut R, dims: Dims) -> ProductVector {
    ProductVector::new(sphere_vector(rng, dims.a), sphere_vector(rng, dims.b))
        .expect("sphere vectors are unit and dims are valid")
}

/// Seeded product vector with both factors uniform on their spheres.
pub fn random_product_vector(seed: u64, dims: Dims) -> ProductVector {
    sample_product_vector(&mut ChaCha8Rng::seed_from_u64(seed), dims)
}

/// Seeded mixture of `k` random product vectors with flat-Dirichlet weights.
pub fn random_separable(seed: u64, k: usize, dims: Dims) -> Result<DensityMatrix> {
    if !(1..=16).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "term count {k} outside 1..=16"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let mut terms: Vec<Term> = raw
        .iter()
        .map(|w| Term {
            weight: w / total,
            vector: sample_product_vector(&mut rng, dims),
        })
        .collect();
    // Absorb rounding so the weights sum to 1 as exactly as floating point allows.
    let drift = 1.0 - terms.iter().map(|t| t.weight).sum::<f64>();
    terms[0].weight += drift;
    mixture(&terms)
}

/// Seeded Ginibre state `G G† / Tr(G G†)` with `G` of shape `d × rank`.
pub fn random_density(seed: u64, rank: usize, dims: Dims) -> Result<DensityMatrix> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::InvalidInput(format!("rank {rank} outside 1..={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols: Vec<CVector> = (0..rank).map(|_| gaussian_vector(&mut rng, d)).collect();
    let g = CMatrix::from_fn(d, rank, |i, k| cols[k][i]);
    let ggh = &g * &g.adjoint();
    let tr = ggh.trace().re;
    Ok(DensityMatrix::from_trusted(ggh.scale(1.0 / tr), dims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn validate_examples() {
        let ok = DensityMatrix::validate(CMatrix::identity(4).scale(0.25), Dims::QUBITS, &tol());
        assert!(ok.is_ok());

        let err = DensityMatrix::validate(
            CMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]),
            Dims::QUBITS,
            &tol(),
        )
        .unwrap_err();
        match err {
            Error::InvalidDensity(v) => {
                assert_eq!(v, vec![Violation::TraceNotOne { trace: 2.0 }]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = DensityMatrix::validate(
            CMatrix::from_real_diag(&[1.5, -0.5, 0.0, 0.0]),
            Dims::QUBITS,
            &tol(),
        )
        .unwrap_err();
        match err {
            Error::InvalidDensity(v) => {
                assert_eq!(v.len(), 1);
                assert!(
                    matches!(v[0], Violation::NotPositive { min_eigenvalue } if (min_eigenvalue + 0.5).abs() < 1e-15)
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_lists_every_violation() {
        let mut m = CMatrix::from_real_diag(&[2.0, -0.5, 0.0, 0.0]);
        m[(0, 1)] = Complex64::new(0.3, 0.0);
        match DensityMatrix::validate(m, Dims::QUBITS, &tol()).unwrap_err() {
            Error::InvalidDensity(v) => assert_eq!(v.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_wrong_size_and_dims() {
        assert!(Dims::new(3, 3).is_err());
        assert!(DensityMatrix::validate(CMatrix::identity(4), Dims::QUBIT_QUTRIT, &tol()).is_err());
    }

    #[test]
    fn partial_trace_of_product_is_exact() {
        let ra = CMatrix::from_real_diag(&[0.3, 0.7]);
        let mut rb = CMatrix::from_real_diag(&[0.6, 0.4]);
        rb[(0, 1)] = Complex64::new(0.1, 0.2);
        rb[(1, 0)] = Complex64::new(0.1, -0.2);
        let rho = DensityMatrix::product(&ra, &rb, &tol()).unwrap();
        assert!(partial_trace_b(&rho).max_abs_diff(&ra) < 1e-16);
        assert!(partial_trace_a(&rho).max_abs_diff(&rb) < 1e-16);
        assert!(is_product_state(&rho, &tol()));
    }

    #[test]
    fn bell_reduced_states_are_maximally_mixed() {
        let rho = DensityMatrix::pure(&bell_vector(BellKind::PhiPlus), Dims::QUBITS).unwrap();
        let half = CMatrix::identity(2).scale(0.5);
        assert!(partial_trace_b(&rho).max_abs_diff(&half) < 1e-15);
        assert!(partial_trace_a(&rho).max_abs_diff(&half) < 1e-15);
        assert!(!is_product_state(&rho, &tol()));
        assert_abs_diff_eq!(index_of_correlation(&rho), 2.0 * 2f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn maximally_mixed_is_product() {
        let rho = DensityMatrix::maximally_mixed(Dims::QUBITS);
        assert!(partial_trace_b(&rho).max_abs_diff(&CMatrix::identity(2).scale(0.5)) < 1e-16);
        assert!(is_product_state(&rho, &tol()));
        assert_abs_diff_eq!(index_of_correlation(&rho), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn werner_examples() {
        let w0 = make_werner(0.0).unwrap();
        assert!(w0.matrix().max_abs_diff(&CMatrix::identity(4).scale(0.25)) < 1e-16);
        let w1 = make_werner(1.0).unwrap();
        let singlet = bell_vector(BellKind::PsiMinus).projector();
        assert!(w1.matrix().max_abs_diff(&singlet) < 1e-16);
        let w = make_werner(0.5).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| w.matrix()[(i, i)].re).collect();
        for (got, want) in diag.iter().zip([0.125, 0.375, 0.375, 0.125]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert!(!is_product_state(&make_werner(0.2).unwrap(), &tol()));
        assert!(make_werner(1.1).is_err());
        assert!(make_werner(-0.1).is_err());
    }

    #[test]
    fn werner_matches_bell_projector_sum() {
        // Independent route: build the isotropic part from the four Bell projectors.
        let x = 0.37;
        let mut m = bell_vector(BellKind::PsiMinus).projector().scale(x);
        for kind in [
            BellKind::PsiMinus,
            BellKind::PsiPlus,
            BellKind::PhiPlus,
            BellKind::PhiMinus,
        ] {
            m = &m + &bell_vector(kind).projector().scale((1.0 - x) / 4.0);
        }
        assert!(make_werner(x).unwrap().matrix().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn bell_vectors() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = bell_vector(BellKind::PsiMinus);
        assert_eq!(psi, CVector::from_real(&[0.0, h, -h, 0.0]));
        assert_eq!(
            bell_vector(BellKind::PhiPlus),
            CVector::from_real(&[h, 0.0, 0.0, h])
        );
        for k in [
            BellKind::PsiPlus,
            BellKind::PsiMinus,
            BellKind::PhiPlus,
            BellKind::PhiMinus,
        ] {
            assert_abs_diff_eq!(bell_vector(k).norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixture_examples() {
        let p00 = ProductVector::basis(Dims::QUBITS, 0, 0);
        let p11 = ProductVector::basis(Dims::QUBITS, 1, 1);
        let single = mixture(&[Term {
            weight: 1.0,
            vector: p00.clone(),
        }])
        .unwrap();
        assert!(
            single
                .matrix()
                .max_abs_diff(&CVector::basis(4, 0).projector())
                < 1e-16
        );
        let two = mixture(&[
            Term {
                weight: 0.5,
                vector: p00.clone(),
            },
            Term {
                weight: 0.5,
                vector: p11,
            },
        ])
        .unwrap();
        assert!(
            two.matrix()
                .max_abs_diff(&CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]))
                < 1e-16
        );
        assert!(mixture(&[Term {
            weight: 0.9,
            vector: p00.clone()
        }])
        .is_err());
        assert!(mixture(&[
            Term {
                weight: 1.5,
                vector: p00.clone()
            },
            Term {
                weight: -0.5,
                vector: p00
            },
        ])
        .is_err());
    }

    #[test]
    fn product_vector_normalizes_and_fixes_phase() {
        let e = CVector::from_fn(2, |k| Complex64::new(0.0, 2.0 * (k + 1) as f64));
        let f = CVector::from_real(&[0.0, -3.0]);
        let p = ProductVector::new(e, f).unwrap();
        assert_abs_diff_eq!(p.e().norm(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.f().norm(), 1.0, epsilon = 1e-15);
        assert!(p.e()[0].im.abs() < 1e-16 && p.e()[0].re > 0.0);
        assert!(p.f()[1].im.abs() < 1e-16 && p.f()[1].re > 0.0);
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            random_product_vector(3, Dims::QUBITS),
            random_product_vector(3, Dims::QUBITS)
        );
        assert_eq!(
            random_separable(9, 5, Dims::QUBITS).unwrap(),
            random_separable(9, 5, Dims::QUBITS).unwrap()
        );
        assert_eq!(
            random_density(4, 2, Dims::QUBITS).unwrap(),
            random_density(4, 2, Dims::QUBITS).unwrap()
        );
        assert_ne!(
            random_density(4, 2, Dims::QUBITS).unwrap(),
            random_density(5, 2, Dims::QUBITS).unwrap()
        );
    }

    #[test]
    fn random_density_has_requested_rank() {
        for seed in 0..20 {
            for rank in 1..=4 {
                let rho = random_density(seed, rank, Dims::QUBITS).unwrap();
                assert_eq!(
                    crate::linalg::rank_with_tol(rho.matrix(), 1e-9).unwrap(),
                    rank
                );
            }
        }
        assert!(random_separable(0, 0, Dims::QUBITS).is_err());
        assert!(random_separable(0, 17, Dims::QUBITS).is_err());
        assert!(random_density(0, 5, Dims::QUBITS).is_err());
    }
}

//! Canonical decompositions of two-qubit states into product projectors.
//!
//! Separable states are peeled one product projector at a time. Each step
//! subtracts the largest multiple `p` of `|e,f⟩⟨e,f|` that keeps both the
//! state and its partial transpose (which loses `p |e,f*⟩⟨e,f*|`) positive,
//! then renormalizes by `1/(1-p)`. The rank pair `(r(ρ), r(ρ^{T_b}))` walks
//! down from at most `(4,4)` to `(2,2)`, where the range plane holds exactly
//! the two product states of the remaining mixture. At most five terms come
//! out, with weights chained as `p_1, p_2(1-p_1), p_3(1-p_2)(1-p_1), ...`.
//!
//! An inseparable state has exactly one negative eigenvalue of `ρ^{T_b}`.
//! Adding positive multiples of the two Schmidt products of its eigenvector
//! repairs the partial transpose to rank 3; the repaired state is separable
//! and goes through the chain above, and the added terms come back with
//! negative weights on the partially conjugated Schmidt products.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{
    is_product_vector, nearest_product, product_in_range, product_states_in_plane,
    range_parameters, reshape_to_2x2, schmidt, solve_both_ranges, PlaneProductResult, SchmidtForm,
    SearchConfig,
};
use crate::linalg::{
    det2, herm_eig, pinv_from_eig, range_projector, rank_of, CMatrix, CVector, EigResult,
};
use crate::separability::{
    negative_pt_spectrum, ppt_check, transpose_b, SeparabilityVerdict, Verdict,
};
use crate::state::{
    DensityMatrix, Dims, ProductVector, Term, ToleranceConfig, WeightedDecomposition,
};

/// Vectors farther than this from the range get a zero threshold.
const IN_RANGE_TOL: f64 = 1e-9;
/// Candidate count for the rank-3 range step.
const RANGE_SAMPLES: usize = 16;
/// Bisection steps for the inseparable repair.
const REPAIR_BISECTIONS: usize = 80;
/// Schmidt coefficients below this are treated as zero.
const SCHMIDT_ZERO: f64 = 1e-8;
/// The last remainder must be this close to a product vector.
const FINAL_PRODUCT_TOL: f64 = 1e-6;
/// Rank tolerances for retrying a stage that failed at the configured one:
/// finer first, then coarser for eigenvalues straddling the cutoff.
const RETRY_RANK_TOLS: [f64; 6] = [1e-11, 1e-12, 1e-13, 1e-14, 1e-8, 1e-7];

#[derive(Debug, Clone, Copy, Default)]
pub struct DecomposeOptions {
    pub tol: ToleranceConfig,
    /// Rotates the sample spirals of the range searches.
    pub seed: u64,
}

impl DecomposeOptions {
    fn phase_offset(&self) -> f64 {
        if self.seed == 0 {
            0.0
        } else {
            ChaCha8Rng::seed_from_u64(self.seed).gen::<f64>() * std::f64::consts::TAU
        }
    }
}

/// One rank-one subtraction `ρ → (ρ - p |v⟩⟨v|) / (1 - p)`.
#[derive(Debug, Clone)]
pub struct SubtractionStep {
    /// 1-based position in the chain.
    pub stage: usize,
    pub vector: ProductVector,
    /// Normalized weight `p ∈ (0, 1)`.
    pub threshold: f64,
    pub ranks_before: (usize, usize),
    /// `(r(ρ), r(ρ^{T_b}))` after renormalization.
    pub ranks_after: (usize, usize),
    /// Both spectra reached zero at the same `p` (within tolerance).
    pub simultaneous: bool,
}

/// Extra data for decompositions of inseparable states.
#[derive(Debug, Clone)]
pub struct InseparableDetails {
    /// Weights added on the two Schmidt products, `p̄_1, p̄_2 ≥ 0`.
    pub pbar: [f64; 2],
    pub negative_eigenvalue: f64,
    pub negative_eigenvector: CVector,
    pub schmidt: SchmidtForm,
    /// Terms in the decomposition of the repaired separable state.
    pub repaired_terms: usize,
    /// The repaired state needed more than four product terms.
    pub exceeds_four_term_bound: bool,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub fingerprint: String,
    pub verdict: SeparabilityVerdict,
    pub decomposition: WeightedDecomposition,
    pub steps: Vec<SubtractionStep>,
    /// Max-abs entry of `Σ w_i P_i - ρ`.
    pub reconstruction_error: f64,
    pub inseparable: Option<InseparableDetails>,
}

/// Short SHA-256 digest of the dims and exact matrix entries.
pub fn fingerprint(rho: &DensityMatrix) -> String {
    let mut h = Sha256::new();
    let dims = rho.dims();
    h.update((dims.a as u64).to_le_bytes());
    h.update((dims.b as u64).to_le_bytes());
    for z in rho.matrix().as_slice() {
        h.update(z.re.to_bits().to_le_bytes());
        h.update(z.im.to_bits().to_le_bytes());
    }
    h.finalize()
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Largest `λ` with `ρ - λ|v⟩⟨v| ⪰ 0`: `1/⟨v|ρ⁺|v⟩` when `v` is in the
/// range of `ρ`, else 0.
pub fn subtraction_threshold(m: &CMatrix, v: &CVector, rank_tol: f64) -> Result<f64> {
    Ok(threshold_from_eig(&herm_eig(m)?, v, rank_tol))
}

fn threshold_from_eig(eig: &EigResult, v: &CVector, rank_tol: f64) -> f64 {
    let proj = range_projector(eig, rank_tol);
    let outside = (v - &proj.mul_vec(v)).norm();
    if outside > IN_RANGE_TOL * v.norm().max(1.0) {
        return 0.0;
    }
    let q = pinv_from_eig(eig, rank_tol).quad_form(v).re;
    if q > 0.0 {
        1.0 / q
    } else {
        0.0
    }
}

struct Spectra {
    rank_tol: f64,
    rho: CMatrix,
    pt: CMatrix,
    eig: EigResult,
    eig_pt: EigResult,
    ranks: (usize, usize),
}

impl Spectra {
    fn new(rho: CMatrix, rank_tol: f64) -> Result<Self> {
        let rho = rho.hermitian_part();
        let pt = transpose_b(&rho, Dims::QUBITS);
        let eig = herm_eig(&rho)?;
        let eig_pt = herm_eig(&pt)?;
        let ranks = (rank_of(&eig, rank_tol), rank_of(&eig_pt, rank_tol));
        Ok(Spectra {
            rank_tol,
            rho,
            pt,
            eig,
            eig_pt,
            ranks,
        })
    }

    /// Thresholds of `v` against `ρ` and of `v*` against `ρ^{T_b}`.
    fn thresholds(&self, v: &ProductVector, rank_tol: f64) -> (f64, f64) {
        (
            threshold_from_eig(&self.eig, &v.ket(), rank_tol),
            threshold_from_eig(&self.eig_pt, &v.partial_conjugate().ket(), rank_tol),
        )
    }

    fn mismatch(&self, detail: impl Into<String>) -> Error {
        Error::NumericalRankMismatch {
            detail: detail.into(),
            spectrum: self.eig.eigenvalues.clone(),
            pt_spectrum: self.eig_pt.eigenvalues.clone(),
        }
    }

    fn subtract(&self, v: &ProductVector, p: f64, rank_tol: f64) -> Result<Spectra> {
        let next = (&self.rho - &v.projector().scale(p)).scale(1.0 / (1.0 - p));
        Spectra::new(next, rank_tol)
    }
}

struct Candidate {
    vector: ProductVector,
    p: f64,
    simultaneous: bool,
}

fn best_candidate(
    spectra: &Spectra,
    vectors: impl IntoIterator<Item = ProductVector>,
    rank_tol: f64,
) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for v in vectors {
        let (a, b) = spectra.thresholds(&v, rank_tol);
        let p = a.min(b);
        if !(p > 0.0 && p < 1.0) {
            continue;
        }
        if best.as_ref().is_none_or(|c| p > c.p) {
            best = Some(Candidate {
                vector: v,
                p,
                simultaneous: (a - b).abs() <= 1e-9,
            });
        }
    }
    best
}

/// Candidates for the first full-rank step: the Schmidt products of the
/// top eigenvector plus the four basis products.
fn full_rank_candidates(spectra: &Spectra) -> Result<Vec<ProductVector>> {
    let top = spectra.eig.eigenvector(3);
    let s = schmidt(&top)?;
    let mut out = vec![s.product(0), s.product(1)];
    for i in 0..2 {
        for mu in 0..2 {
            out.push(ProductVector::basis(Dims::QUBITS, i, mu));
        }
    }
    Ok(out)
}

fn range_candidates(
    m: &CMatrix,
    tol: &ToleranceConfig,
    phase: f64,
    conjugate: bool,
) -> Vec<ProductVector> {
    range_parameters(RANGE_SAMPLES, phase)
        .into_iter()
        .filter_map(|t| product_in_range(m, t, tol).ok())
        .map(|v| if conjugate { v.partial_conjugate() } else { v })
        .collect()
}

/// How far the remainder after splitting off `v` is from a pure product.
fn split_score(spectra: &Spectra, v: &ProductVector, p: f64) -> f64 {
    let rest = (&spectra.rho - &v.projector().scale(p)).scale(1.0 / (1.0 - p));
    match herm_eig(&rest) {
        Ok(eig) => {
            let top = eig.eigenvector(3);
            let det = reshape_to_2x2(&top)
                .map(|m| det2(&m).norm())
                .unwrap_or(f64::INFINITY);
            eig.eigenvalues[2].abs() + det
        }
        Err(_) => f64::INFINITY,
    }
}

/// Rank-2 split: the product states of the range plane.
fn split_candidates(spectra: &Spectra, rank_tol: f64) -> Result<Candidate> {
    let v_hi = spectra.eig.eigenvector(3);
    let v_lo = spectra.eig.eigenvector(2);
    let vectors: Vec<ProductVector> = match product_states_in_plane(&v_hi, &v_lo)? {
        PlaneProductResult::AllProduct => vec![nearest_product(&v_hi)?, nearest_product(&v_lo)?],
        PlaneProductResult::Roots(roots) => roots.into_iter().map(|r| r.vector).collect(),
    };
    let mut best: Option<(f64, Candidate)> = None;
    for v in vectors {
        let (a, b) = spectra.thresholds(&v, rank_tol);
        let p = a.min(b);
        if !(p > 0.0 && p < 1.0) {
            continue;
        }
        let score = split_score(spectra, &v, p);
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            best = Some((
                score,
                Candidate {
                    vector: v,
                    p,
                    simultaneous: (a - b).abs() <= 1e-9,
                },
            ));
        }
    }
    best.map(|(_, c)| c)
        .ok_or_else(|| spectra.mismatch("no product state of the rank-2 range splits the state"))
}

/// Eigenvalues near the rank tolerance are ambiguous: retry a failed stage
/// with other tolerances.
fn retry_finer(spectra: &Spectra, tol: &ToleranceConfig, phase: f64) -> Option<Stage> {
    let mut last_ranks = spectra.ranks;
    for rank_tol in RETRY_RANK_TOLS {
        if rank_tol == tol.rank_tol {
            continue;
        }
        let fine = Spectra::new(spectra.rho.clone(), rank_tol).ok()?;
        if fine.ranks == last_ranks {
            continue;
        }
        last_ranks = fine.ranks;
        let fine_tol = ToleranceConfig { rank_tol, ..*tol };
        if let Ok(stage) = run_stage(&fine, &fine_tol, phase) {
            return Some(stage);
        }
    }
    None
}

enum Stage {
    Final(ProductVector),
    Step(Candidate, Box<Spectra>),
}

/// One stage of the chain at the given rank tolerance.
fn run_stage(spectra: &Spectra, tol: &ToleranceConfig, phase: f64) -> Result<Stage> {
    let rt = tol.rank_tol;
    let ranks = spectra.ranks;
    let cand = match ranks {
        (1, _) => {
            let top = spectra.eig.eigenvector(3);
            if !is_product_vector(&top, FINAL_PRODUCT_TOL) {
                return Err(spectra.mismatch("rank-one remainder is not a product vector"));
            }
            return Ok(Stage::Final(nearest_product(&top)?));
        }
        (2, 2) => Some(split_candidates(spectra, rt)?),
        (4, 4) => best_candidate(spectra, full_rank_candidates(spectra)?, rt),
        (3, 4) => best_candidate(
            spectra,
            range_candidates(&spectra.rho, tol, phase, false),
            rt,
        ),
        (4, 3) => best_candidate(spectra, range_candidates(&spectra.pt, tol, phase, true), rt),
        (3, 3) => {
            let cfg = SearchConfig {
                phase_offset: phase,
                ..SearchConfig::default()
            };
            let sols = solve_both_ranges(&spectra.rho, &spectra.pt, tol, &cfg)?;
            best_candidate(spectra, sols.into_iter().map(|s| s.vector), rt)
        }
        (r, rp) => {
            return Err(spectra.mismatch(format!(
                "rank pair ({r}, {rp}) cannot occur for a separable two-qubit state"
            )))
        }
    };
    let cand = cand.ok_or_else(|| {
        spectra.mismatch(format!("no admissible product vector at ranks {ranks:?}"))
    })?;
    let next = spectra.subtract(&cand.vector, cand.p, rt)?;
    let after = next.ranks;
    if after.0 > ranks.0 || after.1 > ranks.1 || after.0 + after.1 >= ranks.0 + ranks.1 {
        return Err(next.mismatch(format!(
            "subtraction at p = {} moved ranks from {ranks:?} to {after:?}",
            cand.p
        )));
    }
    Ok(Stage::Step(cand, Box::new(next)))
}

struct Chain {
    terms: Vec<Term>,
    steps: Vec<SubtractionStep>,
}

/// Runs the subtraction chain on a PPT two-qubit matrix of unit trace.
fn separable_chain(start: &CMatrix, opts: &DecomposeOptions) -> Result<Chain> {
    let tol = opts.tol;
    let phase = opts.phase_offset();
    let mut spectra = Spectra::new(start.clone(), tol.rank_tol)?;
    let mut chained: Vec<(f64, ProductVector)> = Vec::new();
    let mut steps = Vec::new();

    loop {
        let stage = match run_stage(&spectra, &tol, phase) {
            Ok(stage) => stage,
            Err(err) => retry_finer(&spectra, &tol, phase).ok_or(err)?,
        };
        match stage {
            Stage::Final(v) => {
                chained.push((1.0, v));
                break;
            }
            Stage::Step(cand, next) => {
                steps.push(SubtractionStep {
                    stage: steps.len() + 1,
                    vector: cand.vector.clone(),
                    threshold: cand.p,
                    ranks_before: spectra.ranks,
                    ranks_after: next.ranks,
                    simultaneous: cand.simultaneous,
                });
                chained.push((cand.p, cand.vector));
                spectra = if next.rank_tol == tol.rank_tol {
                    *next
                } else {
                    Spectra::new(next.rho, tol.rank_tol)?
                };
            }
        }
    }

    // Flat weights: w_k = p_k Π_{j<k} (1 - p_j).
    let mut remaining = 1.0;
    let terms = chained
        .into_iter()
        .map(|(p, vector)| {
            let weight = p * remaining;
            remaining *= 1.0 - p;
            Term { weight, vector }
        })
        .collect();
    Ok(Chain { terms, steps })
}

fn require_qubits(rho: &DensityMatrix) -> Result<()> {
    let d = rho.dims();
    if d.is_qubits() {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            dim_a: d.a,
            dim_b: d.b,
        })
    }
}

/// A state whose partial transpose dips below zero within tolerance is
/// replaced by `(ρ + |λ| (|n⟩⟨n|)^{T_b}) / (1 + |λ|)`, which is exactly PPT.
fn ppt_neighbor(rho: &CMatrix) -> Result<CMatrix> {
    let pt = transpose_b(rho, Dims::QUBITS);
    let eig = herm_eig(&pt)?;
    let lambda = eig.min();
    if lambda >= 0.0 {
        return Ok(rho.clone());
    }
    let n = eig.eigenvector(0);
    let lifted = &pt + &n.projector().scale(-lambda);
    Ok(transpose_b(&lifted, Dims::QUBITS).scale(1.0 / (1.0 - lambda)))
}

fn check_reconstruction(err: f64, rho: &CMatrix, tol: &ToleranceConfig) -> Result<()> {
    if err <= tol.recon_tol {
        return Ok(());
    }
    let pt = transpose_b(rho, Dims::QUBITS);
    Err(Error::NumericalRankMismatch {
        detail: format!("reconstruction error {err:e} exceeds {:e}", tol.recon_tol),
        spectrum: herm_eig(rho)?.eigenvalues,
        pt_spectrum: herm_eig(&pt)?.eigenvalues,
    })
}

/// At most five product terms with weights in `(0, 1]` for a PPT two-qubit state.
pub fn decompose_separable(
    rho: &DensityMatrix,
    opts: &DecomposeOptions,
) -> Result<DecompositionReport> {
    require_qubits(rho)?;
    let verdict = ppt_check(rho, &opts.tol)?;
    if verdict.verdict != Verdict::Separable {
        return Err(Error::NotSeparableInput {
            min_pt_eigenvalue: verdict.min_pt_eigenvalue,
        });
    }
    let chain = separable_chain(&ppt_neighbor(rho.matrix())?, opts)?;
    let decomposition = WeightedDecomposition::new(Dims::QUBITS, chain.terms);
    let reconstruction_error = decomposition.reconstruct().max_abs_diff(rho.matrix());
    check_reconstruction(reconstruction_error, rho.matrix(), &opts.tol)?;
    Ok(DecompositionReport {
        fingerprint: fingerprint(rho),
        verdict,
        decomposition,
        steps: chain.steps,
        reconstruction_error,
        inseparable: None,
    })
}

/// Smallest `s ≥ 0` on the ray with `λ_min(pt + s·q) ≥ 0`, by bisection.
fn repair_scale(pt: &CMatrix, q: &CMatrix, lambda_min: f64, ray_norm: f64) -> Result<f64> {
    let min_eig = |s: f64| -> Result<f64> { Ok(herm_eig(&(pt + &q.scale(s)))?.min()) };
    let mut lo = 0.0;
    let mut hi = lambda_min.abs() / ray_norm.max(f64::MIN_POSITIVE);
    let mut doublings = 0;
    while min_eig(hi)? < 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::InconsistentState(
                "partial transpose cannot be repaired along the Schmidt ray".into(),
            ));
        }
    }
    for _ in 0..REPAIR_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if min_eig(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// At most six terms, one or two of them with negative weight, for a
/// two-qubit state whose partial transpose has a negative eigenvalue.
pub fn decompose_inseparable(
    rho: &DensityMatrix,
    opts: &DecomposeOptions,
) -> Result<DecompositionReport> {
    require_qubits(rho)?;
    let verdict = ppt_check(rho, &opts.tol)?;
    if verdict.verdict == Verdict::Separable {
        return Err(Error::NotApplicable(
            "state passes the partial-transpose test; use the separable decomposition".into(),
        ));
    }
    let neg = negative_pt_spectrum(rho, &opts.tol)?;
    let n = neg.eigenvector.clone().ok_or_else(|| {
        Error::InconsistentState("negative eigenvalue without eigenvector".into())
    })?;
    let sf = schmidt(&n)?;
    let [c1, c2] = sf.coefficients;
    let products = [sf.product(0), sf.product(1)];
    let active = if c2 > SCHMIDT_ZERO { 2 } else { 1 };

    // Ray p_i = s c_i².
    let weights = [c1 * c1, if active == 2 { c2 * c2 } else { 0.0 }];
    let mut q = CMatrix::zeros(4, 4);
    for k in 0..active {
        q = &q + &products[k].projector().scale(weights[k]);
    }
    let pt = transpose_b(rho.matrix(), Dims::QUBITS);
    let ray_norm: f64 = weights.iter().map(|w| w * w).sum();
    let s = repair_scale(&pt, &q, neg.min_eigenvalue, ray_norm)?;
    let pbar = [s * weights[0], s * weights[1]];
    let total = 1.0 + pbar[0] + pbar[1];

    let repaired_pt = &pt + &q.scale(s);
    let repaired = transpose_b(&repaired_pt, Dims::QUBITS).scale(1.0 / total);
    let chain = separable_chain(&repaired, opts)?;
    let repaired_terms = chain.terms.len();

    let mut terms: Vec<Term> = chain
        .terms
        .into_iter()
        .map(|t| Term {
            weight: t.weight * total,
            vector: t.vector,
        })
        .collect();
    for k in 0..active {
        terms.push(Term {
            weight: -pbar[k],
            vector: products[k].partial_conjugate(),
        });
    }
    let decomposition = WeightedDecomposition::new(Dims::QUBITS, terms);
    let reconstruction_error = decomposition.reconstruct().max_abs_diff(rho.matrix());
    check_reconstruction(reconstruction_error, rho.matrix(), &opts.tol)?;
    Ok(DecompositionReport {
        fingerprint: fingerprint(rho),
        verdict,
        decomposition,
        steps: chain.steps,
        reconstruction_error,
        inseparable: Some(InseparableDetails {
            pbar,
            negative_eigenvalue: neg.min_eigenvalue,
            negative_eigenvector: n,
            schmidt: sf,
            repaired_terms,
            exceeds_four_term_bound: repaired_terms > 4,
        }),
    })
}

/// Dispatches on the partial-transpose verdict.
pub fn decompose(rho: &DensityMatrix, opts: &DecomposeOptions) -> Result<DecompositionReport> {
    require_qubits(rho)?;
    match ppt_check(rho, &opts.tol)?.verdict {
        Verdict::Separable => decompose_separable(rho, opts),
        Verdict::Inseparable => decompose_inseparable(rho, opts),
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub max_abs_error: f64,
    pub weight_sum: f64,
    pub negative_count: usize,
    /// Per term: finite, unit-norm factors of the right dimensions.
    pub term_valid: Vec<bool>,
    pub passed: bool,
}

/// A weighted product term with its factors exactly as given.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub weight: f64,
    pub e: CVector,
    pub f: CVector,
}

/// Rebuilds `Σ w_i |e_i f_i⟩⟨e_i f_i|` from scratch and compares it with `ρ`.
/// Passes iff the max-abs error is within `recon_tol` and the weights sum
/// to `1 ± 1e-9`.
pub fn verify_decomposition(
    d: &WeightedDecomposition,
    rho: &DensityMatrix,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let raw: Vec<RawTerm> = d
        .terms
        .iter()
        .map(|t| RawTerm {
            weight: t.weight,
            e: t.vector.e().clone(),
            f: t.vector.f().clone(),
        })
        .collect();
    verify_raw_terms(d.dims, &raw, rho, tol)
}

/// Same check as [`verify_decomposition`] on unnormalized factors; a term
/// is valid when both factors are finite unit vectors of the right sizes.
pub fn verify_raw_terms(
    dims: Dims,
    terms: &[RawTerm],
    rho: &DensityMatrix,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let target = rho.dims();
    let n = target.total();
    let mut sum = CMatrix::zeros(n, n);
    let mut term_valid = Vec::with_capacity(terms.len());
    let mut dims_ok = dims == target;
    for t in terms {
        let (e, f) = (&t.e, &t.f);
        if e.dim() != target.a || f.dim() != target.b {
            dims_ok = false;
            term_valid.push(false);
            continue;
        }
        let unit = (e.norm() - 1.0).abs() <= 1e-12 && (f.norm() - 1.0).abs() <= 1e-12;
        term_valid.push(unit && t.weight.is_finite());
        for r in 0..n {
            for c in 0..n {
                let (i, mu) = (r / target.b, r % target.b);
                let (j, nu) = (c / target.b, c % target.b);
                let entry: Complex64 = e[i] * f[mu] * (e[j] * f[nu]).conj();
                sum[(r, c)] += entry * t.weight;
            }
        }
    }
    let max_abs_error = if dims_ok && sum.is_finite() {
        sum.max_abs_diff(rho.matrix())
    } else {
        f64::INFINITY
    };
    let weight_sum: f64 = terms.iter().map(|t| t.weight).sum();
    let negative_count = terms.iter().filter(|t| t.weight < 0.0).count();
    let passed = max_abs_error <= tol.recon_tol && (weight_sum - 1.0).abs() <= 1e-9;
    VerificationReport {
        max_abs_error,
        weight_sum,
        negative_count,
        term_valid,
        passed,
    }
}

/// Closed-form five-term decomposition of the Werner state.
#[derive(Debug, Clone)]
pub struct WernerReference {
    pub decomposition: WeightedDecomposition,
    /// Normalized chain parameters `p_1..p_4`.
    pub p: [f64; 4],
    /// All weights nonnegative; false for `x > 1/3`, where `p_2 < 0`.
    pub statistical: bool,
}

/// The five-term decomposition of the Werner state with singlet fraction
/// `x ∈ (0, 1)`:
///
/// * `p_1 = (1+3x)(1-x) / (4(1+x))` on `|0⟩⊗|1⟩`
/// * `p_2 = (1-3x)(1+x)² / ((3+2x+3x²)(1-x))` on `|0⟩⊗|0⟩`
/// * `p_3 = 1/3` on `(2x, -√(1-x²))/√(3x²+1) ⊗ (√(1+x), √(1-x))/√2`
/// * `p_4 = 1/2` on `(2x, e^{iπ/3}√(1-x²))/√(3x²+1) ⊗ (√(1+x), e^{-2iπ/3}√(1-x))/√2`
/// * the remainder on the complex conjugate of the fourth product.
pub fn werner_reference_decomposition(x: f64) -> Result<WernerReference> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidInput(format!(
            "singlet fraction {x} outside (0, 1)"
        )));
    }
    let p1 = (1.0 + 3.0 * x) * (1.0 - x) / (4.0 * (1.0 + x));
    let p2 = (1.0 - 3.0 * x) * (1.0 + x).powi(2) / ((3.0 + 2.0 * x + 3.0 * x * x) * (1.0 - x));
    let p3 = 1.0 / 3.0;
    let p4 = 0.5;

    let c = |re: f64| Complex64::new(re, 0.0);
    let ne = (3.0 * x * x + 1.0).sqrt();
    let nf = std::f64::consts::SQRT_2;
    let s = (1.0 - x * x).sqrt();
    let (sp, sm) = ((1.0 + x).sqrt(), (1.0 - x).sqrt());
    let pi = std::f64::consts::PI;

    let e3 = CVector::from_vec(vec![c(2.0 * x / ne), c(-s / ne)])?;
    let f3 = CVector::from_vec(vec![c(sp / nf), c(sm / nf)])?;
    let e4 = CVector::from_vec(vec![
        c(2.0 * x / ne),
        Complex64::from_polar(s / ne, pi / 3.0),
    ])?;
    let f4 = CVector::from_vec(vec![
        c(sp / nf),
        Complex64::from_polar(sm / nf, -2.0 * pi / 3.0),
    ])?;
    let vectors = [
        ProductVector::basis(Dims::QUBITS, 0, 1),
        ProductVector::basis(Dims::QUBITS, 0, 0),
        ProductVector::new(e3, f3)?,
        ProductVector::new(e4.clone(), f4.clone())?,
        ProductVector::new(e4.conj(), f4.conj())?,
    ];
    let ps = [p1, p2, p3, p4];
    let mut remaining = 1.0;
    let mut terms = Vec::with_capacity(5);
    for (k, vector) in vectors.into_iter().enumerate() {
        let weight = if k < 4 { ps[k] * remaining } else { remaining };
        if k < 4 {
            remaining *= 1.0 - ps[k];
        }
        terms.push(Term { weight, vector });
    }
    let statistical = terms.iter().all(|t| t.weight >= 0.0);
    Ok(WernerReference {
        decomposition: WeightedDecomposition::new(Dims::QUBITS, terms),
        p: ps,
        statistical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_werner, mixture, BellKind};
    use approx::assert_abs_diff_eq;

    fn opts() -> DecomposeOptions {
        DecomposeOptions::default()
    }

    #[test]
    fn threshold_examples() {
        let v = CVector::from_real(&[0.5, 0.5, 0.5, -0.5]);
        let t = subtraction_threshold(&CMatrix::identity(4).scale(0.25), &v, 1e-9).unwrap();
        assert_abs_diff_eq!(t, 0.25, epsilon = 1e-15);
        let m = CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]);
        assert_abs_diff_eq!(
            subtraction_threshold(&m, &CVector::basis(4, 0), 1e-9).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(
            subtraction_threshold(&m, &CVector::basis(4, 1), 1e-9).unwrap(),
            0.0
        );
    }

    #[test]
    fn pure_product_is_one_term() {
        let v = crate::state::random_product_vector(3, Dims::QUBITS);
        let rho = DensityMatrix::pure(&v.ket(), Dims::QUBITS).unwrap();
        let r = decompose_separable(&rho, &opts()).unwrap();
        assert_eq!(r.decomposition.len(), 1);
        assert_abs_diff_eq!(r.decomposition.terms[0].weight, 1.0, epsilon = 1e-12);
        assert!(r.steps.is_empty());
        assert!(r.reconstruction_error < 1e-12);
    }

    #[test]
    fn diagonal_rank_two_gives_generators() {
        let p00 = ProductVector::basis(Dims::QUBITS, 0, 0);
        let p11 = ProductVector::basis(Dims::QUBITS, 1, 1);
        let rho = mixture(&[
            Term {
                weight: 0.3,
                vector: p00.clone(),
            },
            Term {
                weight: 0.7,
                vector: p11.clone(),
            },
        ])
        .unwrap();
        let r = decompose_separable(&rho, &opts()).unwrap();
        assert_eq!(r.decomposition.len(), 2);
        for t in &r.decomposition.terms {
            let (want, w) = if t.vector.projective_distance(&p00) < 1e-12 {
                (0.3, &p00)
            } else {
                (0.7, &p11)
            };
            assert!(t.vector.projective_distance(w) < 1e-12);
            assert_abs_diff_eq!(t.weight, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn werner_quarter_separable() {
        let rho = make_werner(0.25).unwrap();
        let r = decompose_separable(&rho, &opts()).unwrap();
        assert!(r.decomposition.len() <= 5);
        assert!(r
            .decomposition
            .terms
            .iter()
            .all(|t| t.weight > 0.0 && t.weight <= 1.0));
        assert!(r.reconstruction_error <= 1e-8, "{}", r.reconstruction_error);
        assert!(verify_decomposition(&r.decomposition, &rho, &opts().tol).passed);
    }

    #[test]
    fn werner_half_inseparable() {
        let rho = make_werner(0.5).unwrap();
        let r = decompose_inseparable(&rho, &opts()).unwrap();
        let d = r.inseparable.as_ref().unwrap();
        assert_abs_diff_eq!(d.negative_eigenvalue, -0.125, epsilon = 1e-12);
        assert_eq!(r.decomposition.negative_count(), 2);
        assert!(r.decomposition.len() <= 6);
        assert!(r.reconstruction_error <= 1e-8, "{}", r.reconstruction_error);
        assert_abs_diff_eq!(r.decomposition.weight_sum(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn singlet_inseparable() {
        let rho = DensityMatrix::pure(&crate::state::bell_vector(BellKind::PsiMinus), Dims::QUBITS)
            .unwrap();
        let r = decompose(&rho, &opts()).unwrap();
        assert!(r.decomposition.len() <= 6);
        assert!(r.reconstruction_error <= 1e-8, "{}", r.reconstruction_error);
        assert!(matches!(
            decompose_inseparable(&make_werner(0.2).unwrap(), &opts()),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            decompose_separable(&make_werner(0.6).unwrap(), &opts()),
            Err(Error::NotSeparableInput { .. })
        ));
    }

    #[test]
    fn dispatch_examples() {
        let r = decompose(&DensityMatrix::maximally_mixed(Dims::QUBITS), &opts()).unwrap();
        assert!(r.decomposition.len() <= 5 && r.decomposition.negative_count() == 0);
        assert!(decompose(&make_werner(0.34).unwrap(), &opts())
            .unwrap()
            .inseparable
            .is_some());
        let r = decompose(&make_werner(1.0 / 3.0).unwrap(), &opts()).unwrap();
        assert!(r.inseparable.is_none());
        assert!(r.reconstruction_error <= 1e-8);
        assert!(decompose(&DensityMatrix::maximally_mixed(Dims::QUBIT_QUTRIT), &opts()).is_err());
    }

    #[test]
    fn verification_detects_weight_perturbation() {
        let p00 = ProductVector::basis(Dims::QUBITS, 0, 0);
        let p11 = ProductVector::basis(Dims::QUBITS, 1, 1);
        let terms = vec![
            Term {
                weight: 0.3,
                vector: p00,
            },
            Term {
                weight: 0.7,
                vector: p11,
            },
        ];
        let rho = mixture(&terms).unwrap();
        let mut d = WeightedDecomposition::new(Dims::QUBITS, terms);
        let ok = verify_decomposition(&d, &rho, &opts().tol);
        assert!(ok.passed);
        assert_eq!(ok.max_abs_error, 0.0);
        d.terms[0].weight += 1e-3;
        let bad = verify_decomposition(&d, &rho, &opts().tol);
        assert!(!bad.passed);
        assert_abs_diff_eq!(bad.max_abs_error, 1e-3, epsilon = 1e-12);
    }

    #[test]
    fn werner_reference_values() {
        let r = werner_reference_decomposition(0.25).unwrap();
        assert_abs_diff_eq!(r.p[2], 1.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(r.p[3], 0.5, epsilon = 1e-16);
        assert!(
            r.decomposition.terms[0]
                .vector
                .projective_distance(&ProductVector::basis(Dims::QUBITS, 0, 1))
                < 1e-15
        );
        assert!(
            r.decomposition.terms[1]
                .vector
                .projective_distance(&ProductVector::basis(Dims::QUBITS, 0, 0))
                < 1e-15
        );
        assert!(r.statistical);
        let rho = make_werner(0.25).unwrap();
        assert!(verify_decomposition(&r.decomposition, &rho, &opts().tol).passed);

        let r = werner_reference_decomposition(0.5).unwrap();
        let expect = (1.0 - 1.5) * 1.5f64.powi(2) / ((3.0 + 1.0 + 0.75) * 0.5);
        assert_abs_diff_eq!(r.p[1], expect, epsilon = 1e-15);
        assert!(r.p[1] < 0.0 && !r.statistical);
        assert!(werner_reference_decomposition(0.0).is_err());
        assert!(werner_reference_decomposition(1.0).is_err());
    }
}

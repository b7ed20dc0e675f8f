//! Partial transposition and the positive-partial-transpose verdict.
//!
//! For 2×2 and 2×3 systems a state is separable exactly when its partial
//! transpose is positive semidefinite. For two qubits the partial transpose
//! also equals conjugation by `I_a ⊗ K_b` (identity on A, complex
//! conjugation on B), which [`local_time_reversal`] computes on its own
//! route through the Pauli product basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMatrix, CVector, EigResult};
use crate::state::{DensityMatrix, Dims, ToleranceConfig};

/// Transpose on the B factor: entry `(iμ, jν)` of the result is entry
/// `(iν, jμ)` of `m`.
pub fn transpose_b(m: &CMatrix, dims: Dims) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (i, mu) = (r / dims.b, r % dims.b);
        let (j, nu) = (c / dims.b, c % dims.b);
        m[(dims.index(i, nu), dims.index(j, mu))]
    })
}

/// Transpose on the A factor: entry `(iμ, jν)` of the result is entry
/// `(jμ, iν)` of `m`.
pub fn transpose_a(m: &CMatrix, dims: Dims) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (i, mu) = (r / dims.b, r % dims.b);
        let (j, nu) = (c / dims.b, c % dims.b);
        m[(dims.index(j, mu), dims.index(i, nu))]
    })
}

pub fn partial_transpose_b(rho: &DensityMatrix) -> CMatrix {
    transpose_b(rho.matrix(), rho.dims())
}

pub fn partial_transpose_a(rho: &DensityMatrix) -> CMatrix {
    transpose_a(rho.matrix(), rho.dims())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    Inseparable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Inseparable => "inseparable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeparabilityVerdict {
    pub ppt_holds: bool,
    pub verdict: Verdict,
    /// Full partial-transpose spectrum, ascending.
    pub pt_spectrum: Vec<f64>,
    pub min_pt_eigenvalue: f64,
    /// Eigenvalues below `-psd_tol`.
    pub negative_count: usize,
    /// Eigenvector of the smallest eigenvalue when `negative_count ≥ 1`.
    pub negative_eigenvector: Option<CVector>,
    /// Smallest eigenvalue lies in `[-psd_tol, 0)`: separable, but only
    /// within tolerance.
    pub boundary: bool,
}

/// Positive-partial-transpose test. Separable iff the smallest eigenvalue of
/// `ρ^{T_b}` is at least `-psd_tol`; conclusive for 2×2 and 2×3.
pub fn ppt_check(rho: &DensityMatrix, tol: &ToleranceConfig) -> Result<SeparabilityVerdict> {
    let dims = rho.dims();
    Dims::new(dims.a, dims.b)?;
    let eig = herm_eig(&partial_transpose_b(rho))?;
    Ok(verdict_from_spectrum(&eig, tol))
}

fn verdict_from_spectrum(eig: &EigResult, tol: &ToleranceConfig) -> SeparabilityVerdict {
    let min = eig.min();
    let negative_count = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l < -tol.psd_tol)
        .count();
    let ppt_holds = min >= -tol.psd_tol;
    SeparabilityVerdict {
        ppt_holds,
        verdict: if ppt_holds {
            Verdict::Separable
        } else {
            Verdict::Inseparable
        },
        pt_spectrum: eig.eigenvalues.clone(),
        min_pt_eigenvalue: min,
        negative_count,
        negative_eigenvector: (negative_count > 0).then(|| eig.eigenvector(0)),
        boundary: ppt_holds && min < 0.0,
    }
}

fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let r = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match k {
        0 => [[r, o], [o, r]],
        1 => [[o, r], [r, o]],
        2 => [[o, -i], [i, o]],
        3 => [[r, o], [o, -r]],
        _ => unreachable!(),
    }
}

fn pauli_product(k: usize, l: usize) -> CMatrix {
    let (a, b) = (pauli(k), pauli(l));
    CMatrix::from_fn(4, 4, |r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

/// Real Hilbert-Schmidt coefficients `r_kl = Tr(ρ σ_k ⊗ σ_l) / 4`, so that
/// `ρ = Σ r_kl σ_k ⊗ σ_l`.
pub fn pauli_coefficients(m: &CMatrix) -> [[f64; 4]; 4] {
    let mut r = [[0.0; 4]; 4];
    for (k, row) in r.iter_mut().enumerate() {
        for (l, x) in row.iter_mut().enumerate() {
            *x = (m * &pauli_product(k, l)).trace().re / 4.0;
        }
    }
    r
}

/// `S ρ S` with `S = I_a ⊗ K_b`, evaluated in the Pauli product basis:
/// every B-side basis element is replaced by its complex conjugate, which
/// flips the sign of the `σ_y` components.
pub fn local_time_reversal(rho: &DensityMatrix) -> Result<CMatrix> {
    let dims = rho.dims();
    if !dims.is_qubits() {
        return Err(Error::UnsupportedDimension {
            dim_a: dims.a,
            dim_b: dims.b,
        });
    }
    let r = pauli_coefficients(rho.matrix());
    let mut out = CMatrix::zeros(4, 4);
    for (k, row) in r.iter().enumerate() {
        for (l, &coef) in row.iter().enumerate() {
            let sign = if l == 2 { -1.0 } else { 1.0 };
            out = &out + &pauli_product(k, l).scale(sign * coef);
        }
    }
    Ok(out)
}

/// Negative part of the partial-transpose spectrum of a two-qubit state.
#[derive(Debug, Clone)]
pub struct NegativeSpectrum {
    pub count: usize,
    pub min_eigenvalue: f64,
    /// Unit eigenvector of `min_eigenvalue`, present when `count == 1`.
    pub eigenvector: Option<CVector>,
}

/// Counts eigenvalues of `ρ^{T_b}` below `-psd_tol`. A valid two-qubit state
/// has at most one; two or more means the input is numerically invalid.
pub fn negative_pt_spectrum(
    rho: &DensityMatrix,
    tol: &ToleranceConfig,
) -> Result<NegativeSpectrum> {
    let dims = rho.dims();
    if !dims.is_qubits() {
        return Err(Error::UnsupportedDimension {
            dim_a: dims.a,
            dim_b: dims.b,
        });
    }
    let eig = herm_eig(&partial_transpose_b(rho))?;
    let v = verdict_from_spectrum(&eig, tol);
    if v.negative_count >= 2 {
        return Err(Error::InconsistentState(format!(
            "{} negative partial-transpose eigenvalues {:?}; a valid two-qubit state has at most one",
            v.negative_count, v.pt_spectrum
        )));
    }
    Ok(NegativeSpectrum {
        count: v.negative_count,
        min_eigenvalue: v.min_pt_eigenvalue,
        eigenvector: v.negative_eigenvector,
    })
}

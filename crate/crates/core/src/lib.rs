//! Separability of two-qubit and qubit-qutrit density matrices.
//!
//! The partial-transpose test decides separability in these dimensions.
//! For two qubits the crate also builds explicit decompositions into
//! product projectors: at most five positive terms for separable states,
//! and at most six terms (one or two of them negative) otherwise.
//!
//! ```
//! use qsep::{decompose, make_werner, DecomposeOptions};
//!
//! let rho = make_werner(0.25).unwrap();
//! let report = decompose(&rho, &DecomposeOptions::default()).unwrap();
//! assert!(report.decomposition.len() <= 5);
//! assert!(report.reconstruction_error < 1e-8);
//! ```

pub mod decomposition;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod separability;
pub mod state;

pub use decomposition::{
    decompose, decompose_inseparable, decompose_separable, fingerprint, subtraction_threshold,
    verify_decomposition, verify_raw_terms, werner_reference_decomposition, DecomposeOptions,
    DecompositionReport, InseparableDetails, RawTerm, SubtractionStep, VerificationReport,
    WernerReference,
};
pub use error::{Error, Result, Violation};
pub use geometry::{
    factorize_product, gen_plane_case, is_product_vector, product_in_both_ranges, product_in_range,
    product_states_in_plane, schmidt, solve_both_ranges, PlaneKind, PlaneProductResult, PlaneRoot,
    SchmidtForm, SearchConfig, SphereParam,
};
pub use linalg::{CMatrix, CVector};
pub use separability::{
    local_time_reversal, negative_pt_spectrum, partial_transpose_a, partial_transpose_b, ppt_check,
    SeparabilityVerdict, Verdict,
};
pub use state::{
    bell_vector, index_of_correlation, is_product_state, make_werner, mixture, partial_trace_a,
    partial_trace_b, random_density, random_product_vector, random_separable, von_neumann_entropy,
    BellKind, DensityMatrix, Dims, ProductVector, Term, ToleranceConfig, WeightedDecomposition,
};

use std::fmt;

use thiserror::Error;

/// A single violated density-matrix invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Largest entrywise deviation `|M - M†|`.
    NotHermitian {
        max_deviation: f64,
    },
    TraceNotOne {
        trace: f64,
    },
    NotPositive {
        min_eigenvalue: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian { max_deviation } => {
                write!(f, "not Hermitian (max deviation {max_deviation:e})")
            }
            Violation::TraceNotOne { trace } => write!(f, "trace is {trace} instead of 1"),
            Violation::NotPositive { min_eigenvalue } => {
                write!(f, "negative eigenvalue {min_eigenvalue:e}")
            }
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid density matrix: {}", join(.0))]
    InvalidDensity(Vec<Violation>),

    #[error("unsupported bipartite dimensions {dim_a}x{dim_b}")]
    UnsupportedDimension { dim_a: usize, dim_b: usize },

    #[error("inconsistent state: {0}")]
    InconsistentState(String),

    #[error("vector is not a product vector (|det| = {det:e})")]
    NotAProductVector { det: f64 },

    #[error("plane generators are linearly dependent (overlap {overlap})")]
    DependentInputs { overlap: f64 },

    #[error("range parameter is degenerate for this kernel")]
    DegenerateParameter,

    #[error("no product vector found in both ranges after {restarts} restarts (best residual {best_residual:e})")]
    NoSolutionFound { restarts: usize, best_residual: f64 },

    #[error("state fails the partial-transpose test (min eigenvalue {min_pt_eigenvalue:e})")]
    NotSeparableInput { min_pt_eigenvalue: f64 },

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("numerical rank mismatch: {detail}; spectrum {spectrum:?}, partial-transpose spectrum {pt_spectrum:?}")]
    NumericalRankMismatch {
        detail: String,
        spectrum: Vec<f64>,
        pt_spectrum: Vec<f64>,
    },
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

//! Command implementations behind the `qsep` binary.
//!
//! Exit codes: 0 success (and "separable" for `check`), 1 invalid density
//! matrix, 2 parse, parameter or numerical failure, 3 "inseparable" from
//! `check`, 4 failed verification.

pub mod files;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsep::{
    bell_vector, decompose, gen_plane_case, index_of_correlation, make_werner, ppt_check,
    random_density, random_separable, verify_raw_terms, werner_reference_decomposition, BellKind,
    DecomposeOptions, DensityMatrix, Dims, PlaneKind, ToleranceConfig, Verdict,
};

use files::{from_json, pairs, to_json, DecompositionFile, PlaneFile, StateFile, VectorFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID_STATE: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;
pub const EXIT_INSEPARABLE: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qsep::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qsep::Error::InvalidDensity(_)) => EXIT_INVALID_STATE,
            _ => EXIT_FAILURE,
        }
    }

    pub fn kind(&self) -> &'static str {
        use qsep::Error as E;
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Io { .. } => "IoError",
            CliError::Core(e) => match e {
                E::InvalidInput(_) => "InvalidInput",
                E::InvalidDensity(_) => "InvalidDensity",
                E::UnsupportedDimension { .. } => "UnsupportedDimension",
                E::InconsistentState(_) => "InconsistentState",
                E::NotAProductVector { .. } => "NotAProductVector",
                E::DependentInputs { .. } => "DependentInputs",
                E::DegenerateParameter => "DegenerateParameter",
                E::NoSolutionFound { .. } => "NoSolutionFound",
                E::NotSeparableInput { .. } => "NotSeparableInput",
                E::NotApplicable(_) => "NotApplicable",
                E::NumericalRankMismatch { .. } => "NumericalRankMismatch",
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsep",
    version,
    about = "Separability checks and product-state decompositions"
)]
pub struct Cli {
    #[command(flatten)]
    pub tol: TolArgs,
    /// Report failures as a JSON object on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Positivity tolerance; the rank and reconstruction tolerances scale with it.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub psd_tol: Option<f64>,
    #[arg(long, global = true)]
    pub rank_tol: Option<f64>,
    #[arg(long, global = true)]
    pub recon_tol: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<ToleranceConfig, CliError> {
        let default = ToleranceConfig::default();
        let mut t = match self.tol {
            Some(v) => ToleranceConfig::scaled(v / default.psd_tol)?,
            None => default,
        };
        if let Some(v) = self.psd_tol {
            t.psd_tol = v;
        }
        if let Some(v) = self.rank_tol {
            t.rank_tol = v;
        }
        if let Some(v) = self.recon_tol {
            t.recon_tol = v;
        }
        t.check()?;
        Ok(t)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial-transpose spectrum and separability verdict.
    Check { input: PathBuf },
    /// Decompose a two-qubit state into weighted product projectors.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition file against a state file.
    Verify {
        state: PathBuf,
        decomposition: PathBuf,
    },
    /// Generate states, vectors and planes.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Index of correlation S(ρ_a) + S(ρ_b) - S(ρ).
    Entropy { input: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BellArg {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl From<BellArg> for BellKind {
    fn from(b: BellArg) -> Self {
        match b {
            BellArg::PsiPlus => BellKind::PsiPlus,
            BellArg::PsiMinus => BellKind::PsiMinus,
            BellArg::PhiPlus => BellKind::PhiPlus,
            BellArg::PhiMinus => BellKind::PhiMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlaneArg {
    P1,
    P2,
    P3,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// x|Ψ-⟩⟨Ψ-| + (1-x) I/4.
    Werner {
        #[arg(long)]
        x: f64,
    },
    /// Closed-form five-term decomposition of the Werner state.
    WernerReference {
        #[arg(long)]
        x: f64,
    },
    Bell {
        #[arg(long, value_enum)]
        kind: BellArg,
        /// Write the projector as a state file instead of the vector.
        #[arg(long)]
        projector: bool,
    },
    RandomSeparable {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim_b: usize,
    },
    Random {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim_b: usize,
    },
    PlaneCase {
        #[arg(long = "type", value_enum)]
        kind: PlaneArg,
        /// A,B,C,D in radians.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_hyphen_values = true)]
        angles: Vec<f64>,
        /// Applies a random local unitary.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Outcome of a successful command: the exit code and stdout text.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn load_state(path: &Path, tol: &ToleranceConfig) -> Result<DensityMatrix, CliError> {
    let file: StateFile = from_json(&read(path)?)?;
    let (dims, m) = file.to_matrix()?;
    Ok(DensityMatrix::validate(m, dims, tol)?)
}

fn fmt_f(v: f64) -> String {
    format!("{v:.12e}")
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = cli.tol.resolve()?;
    let mut out = String::new();
    let code = match &cli.command {
        Command::Check { input } => {
            let rho = load_state(input, &tol)?;
            let v = ppt_check(&rho, &tol)?;
            let d = rho.dims();
            let spectrum: Vec<String> = v.pt_spectrum.iter().map(|&l| fmt_f(l)).collect();
            writeln!(out, "dims: {}x{}", d.a, d.b).unwrap();
            writeln!(out, "pt_spectrum: [{}]", spectrum.join(", ")).unwrap();
            writeln!(out, "min_pt_eigenvalue: {}", fmt_f(v.min_pt_eigenvalue)).unwrap();
            writeln!(out, "negative_count: {}", v.negative_count).unwrap();
            writeln!(out, "verdict: {}", v.verdict.as_str()).unwrap();
            match v.verdict {
                Verdict::Separable => EXIT_OK,
                Verdict::Inseparable => EXIT_INSEPARABLE,
            }
        }
        Command::Decompose {
            input,
            seed,
            out: path,
        } => {
            let rho = load_state(input, &tol)?;
            let report = decompose(&rho, &DecomposeOptions { tol, seed: *seed })?;
            let text = to_json(&DecompositionFile::from_report(&report, *seed))?;
            out = write_or_return(path, text)?;
            if path.is_some() {
                writeln!(out, "verdict: {}", report.verdict.verdict.as_str()).unwrap();
                writeln!(out, "terms: {}", report.decomposition.len()).unwrap();
                writeln!(
                    out,
                    "negative_terms: {}",
                    report.decomposition.negative_count()
                )
                .unwrap();
                writeln!(
                    out,
                    "reconstruction_error: {}",
                    fmt_f(report.reconstruction_error)
                )
                .unwrap();
            }
            EXIT_OK
        }
        Command::Verify {
            state,
            decomposition,
        } => {
            let rho = load_state(state, &tol)?;
            let file: DecompositionFile = from_json(&read(decomposition)?)?;
            let (dims, terms) = file.raw_terms()?;
            let r = verify_raw_terms(dims, &terms, &rho, &tol);
            let valid = r.term_valid.iter().filter(|&&v| v).count();
            writeln!(out, "max_abs_error: {}", fmt_f(r.max_abs_error)).unwrap();
            writeln!(out, "weight_sum: {}", fmt_f(r.weight_sum)).unwrap();
            writeln!(
                out,
                "terms: {} ({} negative, {} valid)",
                terms.len(),
                r.negative_count,
                valid
            )
            .unwrap();
            writeln!(out, "result: {}", if r.passed { "pass" } else { "fail" }).unwrap();
            if r.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Command::Gen { kind, out: path } => {
            out = write_or_return(path, generate(kind, &tol)?)?;
            EXIT_OK
        }
        Command::Entropy { input } => {
            let rho = load_state(input, &tol)?;
            let ic = index_of_correlation(&rho);
            let shown = if ic.abs() < 5e-13 { 0.0 } else { ic };
            writeln!(out, "{shown:.12}").unwrap();
            EXIT_OK
        }
    };
    Ok(Outcome { code, stdout: out })
}

fn generate(kind: &GenKind, tol: &ToleranceConfig) -> Result<String, CliError> {
    let state = |rho: &DensityMatrix| to_json(&StateFile::from_matrix(rho.dims(), rho.matrix()));
    match kind {
        GenKind::Werner { x } => state(&make_werner(*x)?),
        GenKind::WernerReference { x } => {
            let r = werner_reference_decomposition(*x)?;
            let rho = make_werner(*x)?;
            let err = r.decomposition.reconstruct().max_abs_diff(rho.matrix());
            let verdict = ppt_check(&rho, tol)?.verdict.as_str();
            to_json(&DecompositionFile::from_decomposition(
                &r.decomposition,
                verdict,
                err,
            ))
        }
        GenKind::Bell { kind, projector } => {
            let v = bell_vector((*kind).into());
            if *projector {
                state(&DensityMatrix::pure(&v, Dims::QUBITS)?)
            } else {
                to_json(&VectorFile {
                    dim_a: 2,
                    dim_b: 2,
                    vector: pairs(&v),
                })
            }
        }
        GenKind::RandomSeparable { k, seed, dim_b } => {
            state(&random_separable(*seed, *k, Dims::new(2, *dim_b)?)?)
        }
        GenKind::Random { rank, seed, dim_b } => {
            state(&random_density(*seed, *rank, Dims::new(2, *dim_b)?)?)
        }
        GenKind::PlaneCase { kind, angles, seed } => {
            let angles: [f64; 4] = angles
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Parse("--angles needs four values".into()))?;
            let kind = match kind {
                PlaneArg::P1 => PlaneKind::P1,
                PlaneArg::P2 => PlaneKind::P2,
                PlaneArg::P3 => PlaneKind::P3,
            };
            let (v1, v2) = gen_plane_case(kind, angles, *seed)?;
            to_json(&PlaneFile {
                dim_a: 2,
                dim_b: 2,
                vectors: [pairs(&v1), pairs(&v2)],
            })
        }
    }
}

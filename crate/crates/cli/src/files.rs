//! JSON interchange files. Complex numbers are `[re, im]` pairs and every
//! float is written with 17 significant digits, so files parse back to the
//! exact same bits.

use std::io;

use num_complex::Complex64;
use qsep::{CMatrix, CVector, DecompositionReport, Dims, RawTerm, WeightedDecomposition};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};

use crate::CliError;

pub type Pair = [f64; 2];

/// Writes every float in `{:.16e}` form.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            CompactFormatter.write_null(w)
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Serializes to a newline-terminated JSON document.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn pairs(v: &CVector) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vector_from_pairs(p: &[Pair]) -> Result<CVector, CliError> {
    Ok(CVector::from_vec(
        p.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
    )?)
}

fn check_dims(dim_a: usize, dim_b: usize) -> Result<Dims, CliError> {
    Ok(Dims::new(dim_a, dim_b)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: Vec<Vec<Pair>>,
}

impl StateFile {
    pub fn from_matrix(dims: Dims, m: &CMatrix) -> Self {
        StateFile {
            dim_a: dims.a,
            dim_b: dims.b,
            matrix: (0..m.rows())
                .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// The declared dims and the raw matrix; density checks happen later.
    pub fn to_matrix(&self) -> Result<(Dims, CMatrix), CliError> {
        let dims = check_dims(self.dim_a, self.dim_b)?;
        let n = dims.total();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(CliError::Parse(format!(
                "matrix must be {n}x{n} for dims {}x{}",
                dims.a, dims.b
            )));
        }
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
            .collect();
        Ok((dims, CMatrix::from_rows(&rows)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub vector: Vec<Pair>,
}

/// The two spanning vectors of a plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub vectors: [Vec<Pair>; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub weight: f64,
    pub e: Vec<Pair>,
    pub f: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub stage: usize,
    pub threshold: f64,
    pub ranks_before: [usize; 2],
    pub ranks_after: [usize; 2],
    pub e: Vec<Pair>,
    pub f: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub verdict: String,
    pub reconstruction_error: f64,
    pub pbar: Option<[f64; 2]>,
    pub steps: Vec<StepRecord>,
    pub seed: Option<u64>,
    pub fingerprint: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub terms: Vec<TermRecord>,
    pub metadata: Metadata,
}

fn term_records(d: &WeightedDecomposition) -> Vec<TermRecord> {
    d.terms
        .iter()
        .map(|t| TermRecord {
            weight: t.weight,
            e: pairs(t.vector.e()),
            f: pairs(t.vector.f()),
        })
        .collect()
}

impl DecompositionFile {
    pub fn from_report(r: &DecompositionReport, seed: u64) -> Self {
        let steps = r
            .steps
            .iter()
            .map(|s| StepRecord {
                stage: s.stage,
                threshold: s.threshold,
                ranks_before: [s.ranks_before.0, s.ranks_before.1],
                ranks_after: [s.ranks_after.0, s.ranks_after.1],
                e: pairs(s.vector.e()),
                f: pairs(s.vector.f()),
            })
            .collect();
        DecompositionFile {
            dim_a: r.decomposition.dims.a,
            dim_b: r.decomposition.dims.b,
            terms: term_records(&r.decomposition),
            metadata: Metadata {
                verdict: r.verdict.verdict.as_str().to_string(),
                reconstruction_error: r.reconstruction_error,
                pbar: r.inseparable.as_ref().map(|d| d.pbar),
                steps,
                seed: Some(seed),
                fingerprint: Some(r.fingerprint.clone()),
            },
        }
    }

    pub fn from_decomposition(
        d: &WeightedDecomposition,
        verdict: &str,
        reconstruction_error: f64,
    ) -> Self {
        DecompositionFile {
            dim_a: d.dims.a,
            dim_b: d.dims.b,
            terms: term_records(d),
            metadata: Metadata {
                verdict: verdict.to_string(),
                reconstruction_error,
                pbar: None,
                steps: Vec::new(),
                seed: None,
                fingerprint: None,
            },
        }
    }

    /// Terms with their factors exactly as stored.
    pub fn raw_terms(&self) -> Result<(Dims, Vec<RawTerm>), CliError> {
        let dims = check_dims(self.dim_a, self.dim_b)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(RawTerm {
                    weight: t.weight,
                    e: vector_from_pairs(&t.e)?,
                    f: vector_from_pairs(&t.f)?,
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok((dims, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_their_bits() {
        let values = [0.1, 1.0 / 3.0, -2.5e-300, 5e-324, f64::MAX, -0.0, 1.0];
        let f = StateFile {
            dim_a: 2,
            dim_b: 2,
            matrix: vec![values.iter().map(|&v| [v, -v]).collect()],
        };
        let text = to_json(&f).unwrap();
        let back: StateFile = from_json(&text).unwrap();
        for (a, b) in f.matrix[0].iter().zip(&back.matrix[0]) {
            assert_eq!(a[0].to_bits(), b[0].to_bits());
            assert_eq!(a[1].to_bits(), b[1].to_bits());
        }
        assert!(text.contains("3.3333333333333331e-1"));
    }

    #[test]
    fn rejects_wrong_shapes() {
        let f = StateFile {
            dim_a: 2,
            dim_b: 2,
            matrix: vec![vec![[1.0, 0.0]; 3]; 3],
        };
        assert!(matches!(f.to_matrix(), Err(CliError::Parse(_))));
        assert!(from_json::<StateFile>("{\"dim_a\":2}").is_err());
    }
}

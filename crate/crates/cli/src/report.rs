use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qcog_core::bell::{ChshReport, MarginalCounts, ProductModel};
use qcog_core::Error;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// A recorded report disagrees with its recomputation.
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Io { .. } | Error::EmptyCorpus(_) => 1,
                Error::NotRepresentable { .. }
                | Error::ConstraintViolated(_)
                | Error::ZeroAnchorMass
                | Error::OrthogonalityFailure(_) => 3,
                Error::AllZeroTable(_) | Error::EmptyTable(_) | Error::EmptyMarginal(_) => 4,
                _ => 2,
            },
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Mismatch(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError::Core(Error::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// One input of a run: where it came from and its content hash.
#[derive(Debug, Serialize)]
pub struct InputRecord {
    pub source: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(source: impl Into<String>, content: &[u8]) -> Self {
        Self {
            source: source.into(),
            sha256: sha256_hex(content),
        }
    }
}

/// Envelope shared by every subcommand's report.
#[derive(Debug, Serialize)]
pub struct RunReport<O, R> {
    pub subcommand: &'static str,
    /// SHA-256 over the per-input hashes, in order.
    pub input_digest: String,
    pub inputs: Vec<InputRecord>,
    pub options: O,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub result: R,
}

impl<O: Serialize, R: Serialize> RunReport<O, R> {
    pub fn new(
        subcommand: &'static str,
        inputs: Vec<InputRecord>,
        options: O,
        warnings: Vec<String>,
        result: R,
    ) -> Self {
        let mut h = Sha256::new();
        for i in &inputs {
            h.update(i.sha256.as_bytes());
        }
        Self {
            subcommand,
            input_digest: hex::encode(h.finalize()),
            inputs,
            options,
            warnings,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Writes `text` to `out`, or to standard output when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FitRow {
    pub exemplar: String,
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_a_or_b: f64,
    pub interference: f64,
    pub lambda: f64,
    pub theta_deg: f64,
    pub classification: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FitReport {
    pub anchor_index: usize,
    pub anchor_exemplar: String,
    pub sign_source: String,
    pub c_m: f64,
    pub rows: Vec<FitRow>,
    pub vector_a: Vec<[f64; 2]>,
    pub vector_b: Vec<[f64; 2]>,
    pub max_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ExperimentOut {
    pub experiment: &'static str,
    pub rows: [String; 2],
    pub cols: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<[[u64; 2]; 2]>,
    pub probabilities: [[f64; 2]; 2],
    pub expectation: f64,
}

#[derive(Debug, Serialize)]
pub struct MarginalOut {
    pub observable: &'static str,
    pub labels: [String; 2],
    pub counts: [u64; 2],
    pub probabilities: [f64; 2],
    pub expectation: f64,
}

#[derive(Debug, Serialize)]
pub struct ChshOut {
    pub model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginals: Option<Vec<MarginalOut>>,
    pub experiments: Vec<ExperimentOut>,
    pub s: f64,
    pub verdict: &'static str,
}

impl ChshOut {
    pub fn coincidence(set: &qcog_core::bell::CoincidenceSet, r: &ChshReport) -> Self {
        let experiments = r
            .experiments
            .iter()
            .map(|e| {
                let t = set.get(e.experiment);
                ExperimentOut {
                    experiment: e.experiment.key(),
                    rows: t.row_labels.clone(),
                    cols: t.col_labels.clone(),
                    counts: Some(t.counts),
                    probabilities: e.probabilities.0,
                    expectation: e.expectation,
                }
            })
            .collect();
        Self {
            model: "coincidence",
            marginals: None,
            experiments,
            s: r.s,
            verdict: r.verdict.as_str(),
        }
    }

    pub fn product(m: &MarginalCounts, p: &ProductModel) -> Self {
        let marginals = p
            .marginals
            .iter()
            .map(|r| {
                let pair = m.get(r.observable);
                MarginalOut {
                    observable: r.observable.key(),
                    labels: pair.labels.clone(),
                    counts: pair.counts,
                    probabilities: r.probabilities,
                    expectation: r.expectation,
                }
            })
            .collect();
        let experiments = p
            .report
            .experiments
            .iter()
            .map(|e| {
                let (x, y) = e.experiment.observables();
                ExperimentOut {
                    experiment: e.experiment.key(),
                    rows: m.get(x).labels.clone(),
                    cols: m.get(y).labels.clone(),
                    counts: None,
                    probabilities: e.probabilities.0,
                    expectation: e.expectation,
                }
            })
            .collect();
        Self {
            model: "product",
            marginals: Some(marginals),
            experiments,
            s: p.report.s,
            verdict: p.report.verdict.as_str(),
        }
    }
}

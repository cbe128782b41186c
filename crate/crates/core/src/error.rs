use thiserror::Error;

use crate::bell::{Experiment, Observable};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // dataset validation
    #[error("column length mismatch: {exemplars} exemplars but columns of length {mu_a}, {mu_b}, {mu_a_or_b}")]
    LengthMismatch {
        exemplars: usize,
        mu_a: usize,
        mu_b: usize,
        mu_a_or_b: usize,
    },
    #[error("dataset needs at least 2 exemplars, got {0}")]
    TooFewExemplars(usize),
    #[error("negative or non-finite weight {value} for exemplar `{label}` in column {column}")]
    NegativeWeight {
        column: &'static str,
        label: String,
        value: f64,
    },
    #[error("column {column} sums to {sum}, outside 1 ± {tolerance}")]
    SumOutOfTolerance {
        column: &'static str,
        sum: f64,
        tolerance: f64,
    },
    #[error("duplicate exemplar label `{0}`")]
    DuplicateLabel(String),
    #[error("empty exemplar label at row {0}")]
    EmptyLabel(usize),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    // linear algebra
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("projector index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("projector index {0} listed twice")]
    DuplicateProjectorIndex(usize),

    // interference fit
    #[error("exemplar {index} is not representable: {reason}")]
    NotRepresentable { index: usize, reason: String },
    #[error("empty input")]
    EmptyInput,
    #[error("anchor {anchor} is not maximal: |lambda_{index}| = {value} exceeds |lambda_anchor| = {anchor_value}")]
    AnchorNotMaximal {
        anchor: usize,
        anchor_value: f64,
        index: usize,
        value: f64,
    },
    #[error("sign assignment has length {got}, expected {expected}")]
    SignLengthMismatch { expected: usize, got: usize },
    #[error("c_m = {0} exceeds 1: the sign assignment violates |sum of non-anchor lambdas| <= |lambda_anchor|")]
    ConstraintViolated(f64),
    #[error("anchor exemplar has zero mass product but a nonzero c_m numerator")]
    ZeroAnchorMass,
    #[error("state vectors are not orthogonal: |<A|B>| = {0}")]
    OrthogonalityFailure(f64),

    // bell / chsh
    #[error("count table for {0} is empty")]
    EmptyTable(Experiment),
    #[error("probability table sums to {0}, not 1")]
    NotNormalized(f64),
    #[error("expectation value {0} outside [-1, 1]")]
    OutOfRangeExpectation(f64),
    #[error("value {0} outside [-1, 1]")]
    OutOfRange(f64),
    #[error("marginal counts for {0} are both zero")]
    EmptyMarginal(Observable),

    // corpus
    #[error("corpus at {0} contains no documents")]
    EmptyCorpus(String),
    #[error("duplicate document id `{0}`")]
    DuplicateDocumentId(String),
    #[error("phrase query `{0}` has no word tokens")]
    EmptyQuery(String),
    #[error("invalid query token `{0}`: tokens must be lowercase alphanumeric")]
    InvalidToken(String),
    #[error("grid entry `{0}` must normalize to exactly one word")]
    InvalidGridWord(String),
    #[error("grid word `{0}` appears more than once")]
    DuplicateGridWord(String),
    #[error("all four counts are zero for experiments {0:?}")]
    AllZeroTable(Vec<Experiment>),

    // slit demo
    #[error("invalid slit configuration: {0}")]
    InvalidConfig(String),

    // input formats
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}

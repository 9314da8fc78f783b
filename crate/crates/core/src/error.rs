use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty corpus")]
    EmptyCorpus,

    #[error("probability out of open interval (0, 1): {0}")]
    ProbabilityOutOfRange(f64),

    #[error("epsilon must lie in (0, 0.5), got {0}")]
    InvalidEpsilon(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector {index}: dimension mismatch: expected {expected}, found {found}")]
    BatchDimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("degenerate training document {index}: zero vector after weighting")]
    DegenerateDocument { index: usize },

    #[error("target outside segment")]
    TargetOutsideSegment,

    #[error("decomposition did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed lexicon line (expected `term<TAB>count`)")]
    MalformedLexiconLine { path: PathBuf, line: usize },

    #[error("{path}:{line}: non-numeric count {value:?}")]
    InvalidLexiconCount {
        path: PathBuf,
        line: usize,
        value: String,
    },

    #[error("{0}: empty lexicon")]
    EmptyLexicon(PathBuf),

    #[error("{path}:{line}: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("model format version {found} is newer than supported version {supported}")]
    UnsupportedModelVersion { found: u32, supported: u32 },

    #[error("model encoding: {0}")]
    ModelEncoding(#[from] serde_json::Error),

    #[error("unknown weighting {0:?} (valid options: ne-tf, tf-idf)")]
    UnknownWeighting(String),

    #[error("too few {class} documents: need at least {needed}, found {found}")]
    InsufficientDocuments {
        class: &'static str,
        needed: usize,
        found: usize,
    },

    #[error("positive label {0:?} not present in dataset")]
    MissingPositiveLabel(String),

    #[error("length mismatch: {predictions} predictions vs {truth} labels")]
    LengthMismatch { predictions: usize, truth: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

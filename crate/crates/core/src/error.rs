use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChompError {
    #[error("encoding overflow: {0}")]
    EncodingOverflow(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("position {position} is outside the tabulated range (n_max = {n_max})")]
    OutOfRange { position: String, n_max: u32 },

    #[error("estimated state count {estimate} exceeds the ceiling {ceiling}; raise the ceiling explicitly to proceed")]
    ResourceLimit { estimate: u128, ceiling: u128 },

    #[error("{path}:{line}: {rule}")]
    Malformed {
        path: PathBuf,
        line: usize,
        rule: MalformedRule,
    },

    #[error("{0}")]
    Precondition(String),

    #[error("no positions fall inside the requested window")]
    EmptyWindow,

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("sequence has zero variance")]
    ZeroVariance,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("training data contains a single class")]
    SingleClass,

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Rule violated by a malformed P-position file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MalformedRule {
    Header(String),
    ColumnCount { found: usize },
    NotAnInteger(String),
    NotNonIncreasing,
    Ordering,
    CountTrailer(String),
    CountMismatch { declared: usize, found: usize },
    Magic,
    Version(u16),
    Truncated { declared: usize, found: usize },
    Metadata(String),
}

impl std::fmt::Display for MalformedRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MalformedRule::Header(h) => write!(f, "expected header `a,b,c,d`, found `{h}`"),
            MalformedRule::ColumnCount { found } => {
                write!(f, "column count: expected 4 columns, found {found}")
            }
            MalformedRule::NotAnInteger(s) => write!(f, "field `{s}` is not a non-negative integer"),
            MalformedRule::NotNonIncreasing => write!(f, "row lengths are not non-increasing"),
            MalformedRule::Ordering => write!(f, "rows are not strictly increasing lexicographically"),
            MalformedRule::CountTrailer(s) => write!(f, "bad count trailer: {s}"),
            MalformedRule::CountMismatch { declared, found } => {
                write!(f, "count trailer declares {declared} rows, file has {found}")
            }
            MalformedRule::Magic => write!(f, "bad magic bytes (expected `CHMP`)"),
            MalformedRule::Version(v) => write!(f, "unsupported cache version {v}"),
            MalformedRule::Truncated { declared, found } => {
                write!(f, "truncated: header declares {declared} codes, payload holds {found}")
            }
            MalformedRule::Metadata(s) => write!(f, "bad metadata: {s}"),
        }
    }
}

pub type Result<T, E = ChompError> = std::result::Result<T, E>;

impl ChompError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ChompError::Io {
            path: path.into(),
            source,
        }
    }
}

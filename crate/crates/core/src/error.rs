use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{source_name}:{line}: {msg}")]
    Parse {
        source_name: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("node {node} out of range (graph has {count} nodes)")]
    NodeOutOfRange { node: usize, count: usize },

    #[error("unknown attribute `{name}`; known attributes: {known}")]
    UnknownAttribute { name: String, known: String },

    #[error("attribute `{0}` is numeric-continuous; discretize it first")]
    ContinuousAttribute(String),

    #[error("attribute `{0}` is not numeric-continuous")]
    NotContinuous(String),

    #[error("attribute `{0}` has no observed values")]
    AllMissing(String),

    #[error("divergence undefined: zero denominator")]
    UndefinedDivergence,

    #[error("cannot aggregate over an empty node set")]
    EmptySet,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("need at least 2 labeled nodes, found {0}")]
    TooFewLabeled(usize),

    #[error("length mismatch: {0} predictions vs {1} actual values")]
    LengthMismatch(usize, usize),

    #[error("training set is empty")]
    EmptyTrain,

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Errors caused by bad flags or configuration rather than bad data.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig(_) | Error::UnknownAttribute { .. }
        )
    }

    /// Errors caused by unreadable or malformed input data.
    pub fn is_data(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
                | Error::Schema(_)
                | Error::ContinuousAttribute(_)
                | Error::NotContinuous(_)
                | Error::AllMissing(_)
                | Error::TooFewLabeled(_)
        )
    }
}

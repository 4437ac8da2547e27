use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid clustering: {0}")]
    InvalidClustering(String),

    #[error("empty partition")]
    EmptyPartition,

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("degenerate boundary: {0}")]
    DegenerateBoundary(String),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("singular parametrization: {0}")]
    SingularParametrization(String),

    /// A score whose defining quantities collapse (zero volume, non-positive log, ...).
    #[error("{0}")]
    Degenerate(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("row {row}, column {column}: {message}")]
    Csv { row: u64, column: usize, message: String },

    #[error("external clusterer: {0}")]
    External(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        let row = err.position().map(|p| p.line()).unwrap_or(0);
        Error::Csv {
            row,
            column: 0,
            message: err.to_string(),
        }
    }
}

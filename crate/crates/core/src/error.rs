//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building complexes, diagrams, filters,
/// or running them.
#[derive(Debug, Error)]
pub enum Error {
    /// Metric labels were rejected (wrong length or not strictly increasing).
    #[error("invalid metric labels: {0}")]
    InvalidMetric(String),

    /// A line complex needs at least one vertex.
    #[error("a line complex needs at least one vertex")]
    EmptyComplex,

    /// A simplex id that does not name a simplex of the expected dimension
    /// in the complex at hand.
    #[error("unknown simplex: dimension {dimension}, index {index}")]
    UnknownSimplex { dimension: usize, index: usize },

    /// Dimension/length mismatch between values that must agree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Leading feedback coefficient a0 is zero; the filter equation cannot
    /// be normalized.
    #[error("degenerate filter: leading coefficient a0 must be nonzero")]
    DegenerateFilter,

    /// Both coefficient lists are empty.
    #[error("empty filter: at least one coefficient is required")]
    EmptyFilter,

    /// A coefficient is NaN or infinite.
    #[error("invalid coefficient: {which}[{index}] is not finite")]
    InvalidCoefficient { which: char, index: usize },

    /// FIR map construction requires all feedback coefficients to be zero.
    #[error("not an FIR filter: feedback coefficients must all be zero")]
    NotFir,

    /// All-pole map construction requires b = (1, 0, ..., 0) and order >= 1.
    #[error("not an all-pole filter: need b = (1, 0, ..., 0) and order >= 1")]
    NotAllPole,

    /// Order-0 filters carry no state, hence no state-space realization.
    #[error("order-0 filter has no state-space realization")]
    NoState,

    /// A signal sample is NaN or infinite.
    #[error("invalid signal: sample {0} is not finite")]
    InvalidSignal(usize),

    /// A text file failed to parse; `context` names the file.
    #[error("{context}:{line}: {message}")]
    Parse {
        context: String,
        line: usize,
        message: String,
    },

    /// An I/O error while reading or writing a file named by `context`.
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(context: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

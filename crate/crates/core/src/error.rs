use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("pattern has {size} vertices, above the search cap of {cap}")]
    PatternTooLarge { size: usize, cap: usize },

    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// A solver's structural precondition does not hold. `witness` lists the
    /// vertices of an induced copy of the forbidden pattern, when one is known.
    #[error("precondition violated: {reason}")]
    Precondition {
        reason: String,
        witness: Option<Vec<usize>>,
    },

    #[error("graph view is not bipartite: edge {0}-{1} lies inside one side")]
    NotBipartite(usize, usize),

    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("no applicable algorithm: {0}")]
    NoApplicableAlgorithm(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

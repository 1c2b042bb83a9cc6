use thiserror::Error;

/// Every failure the library can report. Parse failures are kept apart from
/// domain failures so the CLI can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("edge set is not balanced")]
    UnbalancedInput,
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a basis of the matroid")]
    NotABasis,
    #[error("element already lies in the basis")]
    ElementInBasis,
    #[error("sets are not distinct circuits")]
    NotCircuits,
    #[error("not a circuit")]
    NotACircuit,
    #[error("family is not a linear class of circuits")]
    NotALinearClass,
    #[error("family is not a modular ideal: {0}")]
    InvalidIdeal(String),
    #[error("no point for vertex `{0}`")]
    MissingPoint(String),
    #[error("unknown hyperplane label `{0}`")]
    UnknownLabel(String),
    #[error("edge set is not central")]
    NotCentral,
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("no basis extends the circuit")]
    NoExtendingBasis,
    #[error("not a circle: {0}")]
    NotACircle(String),
    #[error("bias class is not a linear class of circles")]
    NotLinearClass,
    #[error("prescribed bias is not realizable: {0}")]
    UnrealizableBias(String),
    #[error("edges `{0}` and `{1}` are not parallel")]
    NotParallel(String, String),
    #[error("impossible correspondence: {0}")]
    ImpossibleCorrespondence(String),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ParseError { location: location.into(), message: message.into() }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::ParseError { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

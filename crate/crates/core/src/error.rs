use thiserror::Error;

/// Errors raised by the library.
///
/// Violations of general position are reported as data by the validators;
/// these variants are for operations that cannot proceed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rotation system does not describe a planar embedding: {0}")]
    NonPlanarEmbedding(String),
    #[error("inconsistent dart or rotation data: {0}")]
    DanglingDart(String),
    #[error("darts do not form a simple cycle: {0}")]
    NotACycle(String),
    #[error("vertex {0} is not on the cycle")]
    VertexNotOnCycle(String),
    #[error("vertex {0} is not incident with the outer face")]
    VertexNotOnOuterFace(String),
    #[error("component containing {0} has no designated outer face")]
    MissingOuterFace(String),
    #[error("the two components share no face")]
    NoSharedFace,
    #[error("string set is already connected")]
    AlreadyConnected,
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("map has {size} vertices, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("string set has an obstruction; it cannot be extended")]
    ObstructionPresent,
    #[error("extension exceeded its step budget of {0}")]
    StepBudgetExceeded(usize),
    #[error("ends of the chosen strings alternate along the outer boundary")]
    EndsAlternate,
    #[error("overlapping segments: {0}")]
    OverlapViolation(String),
    #[error("tangential intersection: {0}")]
    TangencyViolation(String),
    #[error("self-crossing string: {0}")]
    SelfCrossViolation(String),
    #[error("schema error at {pointer}: {message}")]
    SchemaError { pointer: String, message: String },
    #[error("drawing is not a complete graph: {0}")]
    NotComplete(String),
    #[error("drawing is not good: {0}")]
    NotGood(String),
    #[error("no obstruction present")]
    NoObstruction,
    #[error("B-configuration and obstruction search disagree: {0}")]
    EquivalenceViolated(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

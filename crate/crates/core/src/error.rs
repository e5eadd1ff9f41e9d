use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate {kind} id `{id}`")]
    Duplicate { kind: &'static str, id: String },
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("edge `{id}` has non-positive weight {weight}")]
    NonPositiveWeight { id: String, weight: String },
    #[error("edge `{id}` has non-integer weight {weight}")]
    NonIntegerWeight { id: String, weight: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set does not induce a connected subgraph")]
    DisconnectedVertexSet,
    #[error("graph has no edges")]
    Trivial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} has size {size}, above the exhaustive bound {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("cannot parse `{0}` as a rational")]
    ParseRational(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal consistency violated: {0}")]
    Internal(String),
}

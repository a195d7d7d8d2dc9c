use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} is unreachable from the roots")]
    Unreachable(usize),
    #[error("root set is empty")]
    EmptyRoots,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set {0:?} is not a clique")]
    NotClique(Vec<usize>),
    #[error("clique sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("face {0} is not a triangle")]
    NonTriangularFace(usize),
    #[error("cannot triangulate face {0} without creating a loop")]
    LoopOnlyFace(usize),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid layering: {0}")]
    InvalidLayering(String),
    #[error("separation oracle broke its contract: {0}")]
    OracleViolation(String),
    #[error("input too large: n = {n}, limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("apex set has {count} vertices in layer {layer}, bound {bound}")]
    ApexBound { layer: usize, count: usize, bound: usize },
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("invalid track layout: {0}")]
    InvalidTracks(String),
    #[error("layering is not shadow complete: {0}")]
    NotShadowComplete(String),
    #[error("decomposition is not rich: {0}")]
    NotRich(String),
    #[error("clique ordering is inconsistent across tracks: {0}")]
    CliqueOrder(String),
    #[error("bound violated: {0}")]
    Bound(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown fixture family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    BadRational(String),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index set must be strictly increasing")]
    UnsortedIndexSet,

    #[error("index set has odd size {0}")]
    OddIndexSet(usize),

    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),

    #[error("{what}: size {size} exceeds cap {cap}")]
    OverCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("signature of arity {arity} needs {expected} coefficients, got {got}")]
    SignatureLength {
        arity: usize,
        expected: usize,
        got: usize,
    },

    #[error("basis change is singular")]
    SingularBasis,

    #[error("signature at `{vertex}` is not realizable: {reason}")]
    NotRealizable { vertex: String, reason: String },

    #[error("parity mismatch at `{vertex}`: {reason}")]
    ParityMismatch { vertex: String, reason: String },

    #[error("instance has an odd number of edges ({0}); only even edge counts are supported")]
    OddEdgeCount(usize),

    #[error("instance has no edges")]
    EmptyInstance,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },

    #[error("rotation at `{vertex}`: {detail}")]
    RotationMismatch { vertex: String, detail: String },

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("invalid edge order: {0}")]
    InvalidOrder(String),

    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),

    #[error("`{0}` is not a 0/1-valued equality or clause signature")]
    NonBoolean(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

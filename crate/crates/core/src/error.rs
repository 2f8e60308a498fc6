use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {0} exceeds the supported maximum of 32")]
    OrderTooLarge(u64),
    #[error("polynomial is not irreducible over GF({0})")]
    ReduciblePolynomial(u32),
    #[error("bad field description: {0}")]
    BadField(String),
    #[error("division by zero")]
    DivisionByZero,

    #[error("matroid has a loop")]
    HasLoop,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("matroid has rank zero")]
    RankZero,
    #[error("matroid is not simple")]
    NotSimple,
    #[error("matroid is not linear")]
    NotLinear,
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("point {0} collides with the embedded matroid or repeats")]
    PointCollision(usize),
    #[error("edge ({0}, {1}) is not in the tree")]
    EdgeNotInTree(usize, usize),
    #[error("vertex {0} is not in the tree")]
    NotInTree(usize),
    #[error("edge ({0}, {1}) is not incident to a leaf")]
    NotLeafEdge(usize, usize),
    #[error("the neck of the edge is not contained in the extension")]
    NeckNotFilled,
    #[error("point {0} is not in the external neck of the edge")]
    NotInNeck(usize),
    #[error("common restriction is not a modular flat: {0}")]
    NotModular(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("instance {id} has witnessed width {width} > {k}")]
    WidthWitnessExceeded { id: String, width: usize, k: usize },
    #[error("instance {id} has a U(2,{l}) minor")]
    LineMinorPresent { id: String, l: usize },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeded the size cap of {0}")]
    SizeCap(usize),
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("no label rule matches a subgroup class of order {0}")]
    Unclassified(usize),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid functor: {0}")]
    Spec(String),
    #[error("no restriction recorded from {from} to {to}")]
    MissingRestriction { from: String, to: String },
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
    #[error("mark value is not an integer ({num}/{den})")]
    NonIntegralMark { num: i64, den: i64 },
    #[error("character value outside {{1, -1}} for column {0}")]
    UnsupportedCharacter(String),
    #[error("missing twisted count for {0}")]
    MissingTwistedCount(String),
    #[error("invalid character decomposition: {0}")]
    Decomposition(String),
    #[error("decorated set violates equivariance at point {point}")]
    Equivariance { point: usize },
    #[error("element is not effective")]
    NotEffective,
    #[error("unpaired candidate: {0}")]
    Unpaired(String),
    #[error("inconsistent degeneration order: {0}")]
    Degeneration(String),
    #[error("mismatched ring or group")]
    Mismatch,
    #[error("singular matrix")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;

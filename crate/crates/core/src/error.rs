use thiserror::Error;

/// Errors surfaced by the library. Every variant is a domain error; none of
/// them indicate a bug in the caller's use of memory or threads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("index {index} out of range for letter `{letter}` (largest index is {max})")]
    IndexOutOfRange { letter: String, index: u32, max: u32 },

    #[error("invalid letter context: {0}")]
    InvalidContext(String),

    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,

    #[error("polynomial is not isobaric")]
    NotIsobaric,

    #[error("polynomial is not a semi-invariant")]
    NotSemiInvariant,

    #[error("polynomial is not multilinear")]
    NotMultilinear,

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("letters must be distinct, got `{0}` twice")]
    RepeatedLetter(String),

    #[error("letter `{0}` is already used by the polynomial")]
    LetterInUse(String),

    #[error("letter `{x}` has size {x_size} but `{y}` has size {y_size}")]
    SizeMismatch { x: String, x_size: u32, y: String, y_size: u32 },

    #[error("letter kind mismatch: {0}")]
    KindMismatch(String),

    #[error("invalid letter assignment: {0}")]
    Assignment(String),

    #[error("symbol `{symbol}` has weight {weight} but is assigned to `{roman}` of size {size}")]
    WeightMismatch { symbol: String, weight: u32, roman: String, size: u32 },

    #[error("transvection index {r} out of range (at most {max})")]
    TransvectantRange { r: u32, max: u32 },

    #[error("order {order} is too small (need at least {needed})")]
    OrderTooSmall { order: u32, needed: u32 },

    #[error("symbolic expressions have overlapping supports")]
    OverlappingSupports,

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("raising operator did not vanish within {0} steps")]
    IterationLimit(u32),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

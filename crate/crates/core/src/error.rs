use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("odd genus required (got {0}); the Moebius-band partition needs odd g >= 3")]
    OddGenusRequired(usize),
    #[error("unknown symmetry `{0}`")]
    UnknownSymmetry(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve `{0}` is one-sided; a two-sided curve is required")]
    TwoSidedRequired(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("curve `{curve}` needs genus >= {min} (got {genus})")]
    CurveUnavailable { curve: String, min: usize, genus: usize },
    #[error("degenerate crossing while tracing `{0}`")]
    DegenerateGeometry(String),
    #[error("configuration line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("malformed exponent in `{token}` at position {position}")]
    MalformedExponent { token: String, position: usize },
    #[error("empty word")]
    EmptyWord,
    #[error("generator {0} is singular over the coefficient ring")]
    SingularGenerator(usize),
    #[error("unsupported matrix size {size} over Z/{modulus}")]
    UnsupportedMatrix { size: usize, modulus: u8 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

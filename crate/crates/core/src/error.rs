use thiserror::Error;

/// Errors raised by group construction, character tables and the checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("enumeration exceeded cap of {cap} ({what})")]
    CapExceeded { cap: usize, what: String },

    #[error("permutation is not a bijection: {0}")]
    NotBijective(String),

    #[error("generators have mismatched degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("group has no defining characteristic")]
    NoCharacteristic,

    #[error("group is not of Lie type")]
    NotLieType,

    #[error("word is empty after free reduction")]
    EmptyWord,

    #[error("subset is empty")]
    EmptySubset,

    #[error("subset is trivial (empty or {{1}})")]
    TrivialSubset,

    #[error("subset is not a union of conjugacy classes")]
    NotNormal,

    #[error("character table has only the trivial character")]
    OnlyTrivial,

    #[error("eigenvalues kept colliding after {retries} retries")]
    DegenerateSpectrum { retries: usize },

    #[error("character degree {value} is not integral")]
    NonIntegralDegree { value: f64 },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("character table schema error: {0}")]
    Schema(String),

    #[error("orthogonality residual {residual:e} exceeds {limit:e}")]
    Orthogonality { residual: f64, limit: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid index {index} (size {len})")]
    Index { index: usize, len: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

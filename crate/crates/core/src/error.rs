use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeBinomialIndex(i64),

    #[error("alternating binomial sum needs d > b >= 0, got d={d}, b={b}")]
    IdentityRange { d: i64, b: i64 },

    #[error("division by zero")]
    ZeroDenominator,

    #[error("invalid coefficient {0:?}")]
    InvalidCoefficient(String),

    #[error("rank parameter n must be at least 1")]
    InvalidRank,

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("index list must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<i64>),

    #[error("ring contexts differ (n={left} vs n={right})")]
    ContextMismatch { left: usize, right: usize },

    #[error("term is not square-free")]
    NotSquareFree,

    #[error("term contains x_{0}, which is not in the tautological basis")]
    ContainsTopVariable(usize),

    #[error("{0}")]
    Shape(String),

    #[error("structure constant c_{{{j},{k}}}^{{{l}}} = {value} is not an integer")]
    NonIntegral {
        j: String,
        k: String,
        l: String,
        value: String,
    },

    #[error("n = {n} exceeds the size guard {limit} (set PETERSON_MAX_N to override)")]
    SizeGuard { n: usize, limit: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

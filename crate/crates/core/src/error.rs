use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),

    #[error("parameter {name} must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: String },

    #[error("negative radicand {0}")]
    NegativeRadicand(String),

    #[error("operands live in different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    MixedRadicand(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("exact division left a nonzero remainder {remainder}")]
    NonZeroRemainder { remainder: String },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("empty or reversed interval: lower end {lo} is not below upper end {hi}")]
    InvalidInterval { lo: String, hi: String },

    #[error("wrong parameter regime: {0}")]
    WrongRegime(String),

    #[error("{0} is undefined for these parameters")]
    Undefined(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {n} exceeds the degree cap {cap}")]
    IndexTooLarge { n: usize, cap: usize },

    #[error(
        "root iteration did not converge after {iterations} steps (worst radius {worst_radius:e})"
    )]
    NoConvergence {
        iterations: usize,
        worst_radius: f64,
        best_radii: Vec<f64>,
    },
}

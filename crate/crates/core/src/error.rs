use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Each variant maps onto one of the process exit codes used by the
/// command-line front end (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero argument: {0}")]
    ZeroArgument(&'static str),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("both factors vanish at x = {0}; the factorization is corrupt")]
    BothFactorsVanish(String),

    #[error("x = {x} is not a point of the surface over {place}")]
    NotALocalPoint { x: String, place: String },

    #[error("invalid quaternion class: {0}")]
    InvalidClass(String),

    #[error("surface has no points over {0}; the Brauer-Manin verdict is vacuous")]
    NotEverywhereLocallySolvable(String),

    #[error("not separable: {0}")]
    NotSeparable(String),

    #[error("not coprime: {0}")]
    NotCoprime(String),

    #[error("bad degree: {0}")]
    BadDegree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("smoothness fails on chart {chart}: {witness}")]
    SmoothnessFails { chart: String, witness: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("cochain rank {rank} exceeds the configured cap {cap}")]
    RankOverflow { rank: usize, cap: usize },

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("verification failed at {location}: {message}")]
    VerificationFailed { location: String, message: String },

    #[error("assertion failed: {0}")]
    AssertionFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    /// Process exit code: 1 for a failed assertion or replay, 2 for bad
    /// input, 3 for precision or resource exhaustion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted(_) | Error::ResourceExhausted(_) | Error::RankOverflow { .. } => 3,
            Error::VerificationFailed { .. }
            | Error::AssertionFailed(_)
            | Error::HypothesisFails(_)
            | Error::SmoothnessFails { .. }
            | Error::NotEverywhereLocallySolvable(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

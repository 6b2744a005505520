use alloc::string::String;

/// Everything that can go wrong in the core. Unknown parameter combinations are
/// `InvalidParameters`, never a silent fallback.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("coordinates are linearly dependent over Q_p")]
    RationalDependence,
    #[error("no common apartment adaptation found: {0}")]
    AdaptationFailed(String),
    #[error("Cartier module axiom violated: {0}")]
    AxiomViolation(String),
    #[error("fixed-point lattice has rank below d: {0}")]
    FixedPointRankDeficient(String),
    #[error("framing is not a quasi-isogeny: {0}")]
    FramingNotIsogeny(String),
    #[error("inconsistent dimension data: {0}")]
    Inconsistent(String),
}

/// Coarse classes used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Precision,
    Enumeration,
    Dependence,
    Axiom,
    Math,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidParameters(_)
            | Error::SingularMatrix
            | Error::RankMismatch { .. }
            | Error::ReducibleModulus => ErrorClass::Input,
            Error::PrecisionExhausted(_) | Error::InversionOfZero => ErrorClass::Precision,
            Error::EnumerationTooLarge(_) => ErrorClass::Enumeration,
            Error::RationalDependence => ErrorClass::Dependence,
            Error::AxiomViolation(_)
            | Error::FixedPointRankDeficient(_)
            | Error::FramingNotIsogeny(_) => ErrorClass::Axiom,
            Error::AdaptationFailed(_) | Error::Inconsistent(_) => ErrorClass::Math,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

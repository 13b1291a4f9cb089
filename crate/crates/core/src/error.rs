use thiserror::Error;

/// Errors raised by the exact q-algebra and identity machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact Laurent-polynomial quotient exists")]
    NotDivisible,
    #[error("value is not a Laurent polynomial")]
    NotPolynomial,
    #[error("{0}")]
    InvalidHypothesis(String),
    #[error("{0}")]
    InvalidIndex(String),
    #[error("{0}")]
    InvalidSeries(String),
    #[error("series does not terminate: no upper parameter equals q^(-N)")]
    NonTerminating,
    #[error("a lower q-Pochhammer symbol vanishes within the summation range")]
    PoleInDenominator,
    #[error("instance is degenerate (pole within the summation range)")]
    Degenerate,
    #[error("independent computation routes disagree: {0}")]
    RouteMismatch(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
}

impl Error {
    /// Stable variant name, used by the CLI when surfacing domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotDivisible => "NotDivisible",
            Error::NotPolynomial => "NotPolynomial",
            Error::InvalidHypothesis(_) => "InvalidHypothesis",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::InvalidSeries(_) => "InvalidSeries",
            Error::NonTerminating => "NonTerminating",
            Error::PoleInDenominator => "PoleInDenominator",
            Error::Degenerate => "Degenerate",
            Error::RouteMismatch(_) => "RouteMismatch",
            Error::Json(_) => "Json",
            Error::MissingParameter(_) => "MissingParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

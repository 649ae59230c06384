use thiserror::Error;

/// Errors raised by the library. Variant names are part of the CLI contract:
/// they are surfaced verbatim when a command fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonUnitLeading: {0}")]
    NonUnitLeading(String),
    #[error("PrecisionExhausted: {0}")]
    PrecisionExhausted(String),
    #[error("NotIntegralSeries: {0}")]
    NotIntegralSeries(String),
    #[error("UnsupportedWeight: {0}")]
    UnsupportedWeight(String),
    #[error("UnsupportedWeightParity: weight {0} is odd")]
    UnsupportedWeightParity(i64),
    #[error("UnknownDivisor: {0}")]
    UnknownDivisor(String),
    #[error("UnsupportedParameter: {0}")]
    UnsupportedParameter(String),
    #[error("DeterminantMismatch: {0} vs {1}")]
    DeterminantMismatch(String, String),
    #[error("NotInDeltaN: {0}")]
    NotInDeltaN(String),
    #[error("NotPolynomialInJ: {0}")]
    NotPolynomialInJ(String),
    #[error("ConvergenceBudgetExceeded: {0}")]
    ConvergenceBudgetExceeded(String),
    #[error("NonGenusZeroLevel: {0}")]
    NonGenusZeroLevel(u64),
    #[error("MissingCuspValue: {0}")]
    MissingCuspValue(String),
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// The bare variant name, e.g. `"NotIntegralSeries"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonUnitLeading(_) => "NonUnitLeading",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotIntegralSeries(_) => "NotIntegralSeries",
            Error::UnsupportedWeight(_) => "UnsupportedWeight",
            Error::UnsupportedWeightParity(_) => "UnsupportedWeightParity",
            Error::UnknownDivisor(_) => "UnknownDivisor",
            Error::UnsupportedParameter(_) => "UnsupportedParameter",
            Error::DeterminantMismatch(..) => "DeterminantMismatch",
            Error::NotInDeltaN(_) => "NotInDeltaN",
            Error::NotPolynomialInJ(_) => "NotPolynomialInJ",
            Error::ConvergenceBudgetExceeded(_) => "ConvergenceBudgetExceeded",
            Error::NonGenusZeroLevel(_) => "NonGenusZeroLevel",
            Error::MissingCuspValue(_) => "MissingCuspValue",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

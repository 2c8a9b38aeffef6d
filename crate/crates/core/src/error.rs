use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report. The variant name is what the CLI
/// prints, so keep the names stable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is infinite: {0}")]
    NotFinite(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("leading coefficient is not positive: {0}")]
    NegativeLeading(String),
    #[error("no transfer: {0}")]
    NoTransfer(String),
    #[error("divisor is not eventually nonzero: {0}")]
    NotEventuallyNonzero(String),
    #[error("sequence is not Cauchy: {0}")]
    NotCauchy(String),
    #[error("not differentiable: {0}")]
    NotDifferentiable(String),
    #[error("no sign change between f({0}) and f({1})")]
    NoSignChange(String, String),
    #[error("non-numeric value: {0}")]
    NonNumericValue(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial degree {0} exceeds the cap of 512")]
    DegreeOverflow(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotFinite(_) => "NotFinite",
            Error::Undecided(_) => "Undecided",
            Error::Domain(_) => "DomainError",
            Error::NegativeLeading(_) => "NegativeLeading",
            Error::NoTransfer(_) => "NoTransfer",
            Error::NotEventuallyNonzero(_) => "NotEventuallyNonzero",
            Error::NotCauchy(_) => "NotCauchy",
            Error::NotDifferentiable(_) => "NotDifferentiable",
            Error::NoSignChange(..) => "NoSignChange",
            Error::NonNumericValue(_) => "NonNumericValue",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::Parse(_) => "ParseError",
            Error::DegreeOverflow(_) => "DegreeOverflow",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    /// True for the errors that mean "the decidable fragment ends here".
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided(_))
    }
}

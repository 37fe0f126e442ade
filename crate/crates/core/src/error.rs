use thiserror::Error;

/// Validation failures on user-supplied input. Each variant carries a stable
/// machine-readable code (see [`InputError::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {p} exceeds the supported bound {bound}")]
    PrimeTooLarge { p: u64, bound: u64 },
    #[error("polynomial has degree {degree}, expected p = {p}")]
    DegreeMismatch { degree: usize, p: u64 },
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("coefficient of x^{index} = {value} is not {p}-integral")]
    NonIntegral { index: usize, value: String, p: u64 },
    #[error("inertia degree n must be positive")]
    ZeroInertiaDegree,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("x divides f, so f is reducible")]
    DivisibleByX,
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::NotOddPrime(_) => "p_not_odd_prime",
            InputError::PrimeTooLarge { .. } => "p_too_large",
            InputError::DegreeMismatch { .. } => "degree_mismatch",
            InputError::NotMonic(_) => "not_monic",
            InputError::NonIntegral { .. } => "non_integral",
            InputError::ZeroInertiaDegree => "bad_inertia_degree",
            InputError::Parse(_) => "parse_error",
            InputError::DivisibleByX => "divisible_by_x",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Input(#[from] InputError),
    /// An operation was called outside its contract (mismatched conductors,
    /// a subgroup that does not exist in the given group, ...).
    #[error("usage error: {0}")]
    Usage(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    /// A theoretical guarantee failed at runtime. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(e) => e.code(),
            Error::Usage(_) => "usage",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

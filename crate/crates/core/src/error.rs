use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field GF({p}^{m}) is too large")]
    ExtensionTooLarge { p: u64, m: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("algebra is not finite dimensional (no paths vanish up to length {0})")]
    NotFiniteDimensional(usize),
    #[error("unknown vertex or arrow: {0}")]
    UnknownName(String),
    #[error("characteristic {have} is too small; use a prime of at least {needed}")]
    CharacteristicTooSmall { have: u64, needed: u64 },
    #[error("global dimension exceeds {0}")]
    GlobalDimensionTooLarge(usize),
    #[error("tau_2-finiteness could not be decided: {0}")]
    Tau2Inconclusive(String),
    #[error("splitting field GF({p}^{m}) is too large")]
    SplittingFieldTooLarge { p: u64, m: u64 },
    #[error("path does not vanish: {0}")]
    PathNotVanishing(String),
    #[error("computation did not converge: {0}")]
    NoConvergence(String),
    #[error("not a map of modules: {0}")]
    NotAHomomorphism(String),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ExtensionTooLarge { .. } => "extension_too_large",
            Error::InvalidInput(_) => "invalid_input",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotFiniteDimensional(_) => "not_finite_dimensional",
            Error::UnknownName(_) => "unknown_name",
            Error::CharacteristicTooSmall { .. } => "characteristic_too_small",
            Error::GlobalDimensionTooLarge(_) => "global_dimension_too_large",
            Error::Tau2Inconclusive(_) => "tau2_inconclusive",
            Error::SplittingFieldTooLarge { .. } => "splitting_field_too_large",
            Error::PathNotVanishing(_) => "path_not_vanishing",
            Error::NoConvergence(_) => "no_convergence",
            Error::NotAHomomorphism(_) => "not_a_homomorphism",
            Error::Inconsistent(_) => "inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

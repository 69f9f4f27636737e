use thiserror::Error;

/// Errors raised by the algebra layer and the verification pipeline.
///
/// Verification *failures* (a structural claim that did not hold for some
/// prime) are not errors: they are recorded in reports. The variants here are
/// contract violations, resource refusals and internal invariant breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below 5")]
    PrimeTooSmall(u64),
    #[error("characteristic {0} is not below 2^31")]
    PrimeTooLarge(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("operands live over different fields")]
    MismatchedFields,
    #[error("polynomial is not weight-homogeneous")]
    Inhomogeneous,
    #[error("weight {weight} is inconsistent with the dehomogenized form")]
    InconsistentWeight { weight: u32 },
    #[error("division is not exact; remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("modulus is not irreducible")]
    Reducible,
    #[error("curve is singular (discriminant vanishes)")]
    Singular,
    #[error("curve is supersingular")]
    Supersingular,
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

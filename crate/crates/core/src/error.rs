use core::fmt;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation (negative `u`, NaN, ...).
    Domain(String),
    /// Malformed Orlicz function or space description.
    Invalid(String),
    /// A documented precondition does not hold.
    Precondition(String),
    /// The regime carries no information (φ ≡ 0 or ≡ ∞ there).
    DegenerateRegime(String),
    /// The index bracket does not certify a positive exponent.
    NotCertified(String),
    /// No finite bracket for the Minkowski functional within the doubling horizon.
    NotInSpace,
    /// A search ran past its horizon without success.
    Horizon(String),
    /// The space kind has no measure solver for the requested construction.
    UnsupportedSpace(String),
    /// Nothing found inside the search horizon; not a disproof.
    NotFound(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::Invalid(s) => write!(f, "invalid input: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::DegenerateRegime(s) => write!(f, "degenerate regime: {s}"),
            Error::NotCertified(s) => write!(f, "not certified: {s}"),
            Error::NotInSpace => write!(f, "not in space: no finite bracket within the doubling horizon"),
            Error::Horizon(s) => write!(f, "horizon exceeded: {s}"),
            Error::UnsupportedSpace(s) => write!(f, "unsupported space: {s}"),
            Error::NotFound(s) => write!(f, "not found within horizon: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

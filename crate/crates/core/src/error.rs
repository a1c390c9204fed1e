use core::fmt;

/// Errors surfaced by constructors and operations with arithmetic
/// preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given modulus is not a prime number.
    NotPrime(u64),
    /// A parameter is outside the supported range.
    OutOfRange { what: &'static str, value: u64 },
    /// The residue is not invertible modulo `modulus`.
    NotAUnit { residue: u64, modulus: u64 },
    /// The coefficient characteristic divides the curve degree, so the
    /// curve Z^d = X^d + Y^d is not smooth.
    CharDividesDegree { p: u64, d: u64 },
    /// `h` or `2h + 1` is not prime.
    NotSophieGermain(u64),
    /// A serialized witness or element does not satisfy the homogeneity
    /// and degree constraints.
    BadElementData(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{} is not prime", n),
            Error::OutOfRange { what, value } => {
                write!(f, "{} out of supported range: {}", what, value)
            }
            Error::NotAUnit { residue, modulus } => {
                write!(f, "{} is not a unit modulo {}", residue, modulus)
            }
            Error::CharDividesDegree { p, d } => {
                write!(f, "characteristic {} divides curve degree {}", p, d)
            }
            Error::NotSophieGermain(h) => {
                write!(f, "{} is not a Sophie Germain prime (or too small)", h)
            }
            Error::BadElementData(msg) => write!(f, "bad element data: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

use core::fmt;

use crate::families::FamilyId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Family parameters violate the orthogonality conditions.
    ParameterDomain { family: FamilyId, reason: &'static str },
    /// A required parameter is missing for the family.
    MissingParameter { family: FamilyId, name: &'static str },
    /// An integer argument lies outside its admissible range.
    OutOfRange { what: &'static str, value: i64, min: i64, max: i64 },
    /// The Christoffel determinant is singular for this choice of nodes.
    DegenerateConfiguration,
    /// Results did not stabilise under precision doubling.
    PrecisionExhausted { bits: usize },
    InvalidNumber,
    DegreeTooHigh { degree: usize, max: usize },
    ZeroPolynomial,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParameterDomain { family, reason } => {
                write!(f, "invalid parameters for {family}: {reason}")
            }
            Error::MissingParameter { family, name } => {
                write!(f, "{family} requires parameter `{name}`")
            }
            Error::OutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside [{min}, {max}]")
            }
            Error::DegenerateConfiguration => {
                f.write_str("degenerate configuration: singular Christoffel determinant")
            }
            Error::PrecisionExhausted { bits } => {
                write!(f, "results did not stabilise up to {bits} bits of precision")
            }
            Error::InvalidNumber => f.write_str("invalid number"),
            Error::DegreeTooHigh { degree, max } => {
                write!(f, "polynomial degree {degree} exceeds {max}")
            }
            Error::ZeroPolynomial => f.write_str("zero polynomial has no isolated roots"),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::OutOfRange {
            what,
            value: value as i64,
            min: min as i64,
            max: max as i64,
        });
    }
    Ok(())
}

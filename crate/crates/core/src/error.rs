//! Error type shared by all layers of the library.

use std::fmt;

/// Errors raised by arithmetic, linear algebra and the FGLM pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by zero, or by a scalar that is indistinguishable from zero.
    ZeroDivision,
    /// Residue of a scalar with negative valuation was requested.
    NegativeValuation,
    /// A result could not be certified at the available precision.
    InsufficientPrecision(String),
    /// Exact inversion is not representable (multi-term Laurent unit).
    ExactInversion,
    /// The leading-term ideal does not contain a pure power of every variable.
    NotZeroDimensional(String),
    /// The basis is not reduced modulo the uniformizer.
    NotReducedModPi(String),
    /// The basis has terms outside the staircase (nonreduced over K).
    NotReducedOverK(String),
    /// Eigenvalue with negative valuation where nonnegative ones were required.
    EigenvalueBelowZero,
    /// The recursive multiplication-matrix computation hit a dependency cycle.
    CycleDetected(String),
    /// Target log-radii exceed the source log-radii in some coordinate.
    RadiiNotDecreasing { index: usize },
    /// The staircase matrix M of the reconstruction step is singular.
    SingularM(String),
    /// Multiplication matrices do not commute.
    NonCommuting { i: usize, j: usize },
    /// Matrix or vector dimensions do not agree.
    InconsistentDimension(String),
    /// Division-oracle step budget exceeded.
    NonTerminating,
    /// Malformed problem file or scalar literal.
    Parse(String),
    /// Structural misuse of the API (mismatched contexts, empty input, ...).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivision => write!(f, "division by (indistinguishable from) zero"),
            Error::NegativeValuation => write!(f, "residue of a scalar with negative valuation"),
            Error::InsufficientPrecision(m) => write!(f, "insufficient precision: {m}"),
            Error::ExactInversion => {
                write!(f, "exact inverse of a multi-term Laurent unit is not finitely supported")
            }
            Error::NotZeroDimensional(m) => write!(f, "ideal is not zero-dimensional: {m}"),
            Error::NotReducedModPi(m) => write!(f, "basis is not reduced modulo pi: {m}"),
            Error::NotReducedOverK(m) => {
                write!(f, "basis is not reduced (term outside the staircase): {m}")
            }
            Error::EigenvalueBelowZero => {
                write!(f, "matrix has an eigenvalue of negative valuation")
            }
            Error::CycleDetected(m) => write!(f, "dependency cycle in recursive update: {m}"),
            Error::RadiiNotDecreasing { index } => {
                write!(f, "target log-radius exceeds source log-radius at variable {index}")
            }
            Error::SingularM(m) => write!(f, "staircase matrix is singular: {m}"),
            Error::NonCommuting { i, j } => {
                write!(f, "multiplication matrices {i} and {j} do not commute")
            }
            Error::InconsistentDimension(m) => write!(f, "inconsistent dimensions: {m}"),
            Error::NonTerminating => write!(f, "reduction step budget exceeded"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code classes used by the command line interface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 4,
            Error::InsufficientPrecision(_)
            | Error::ZeroDivision
            | Error::ExactInversion
            | Error::CycleDetected(_)
            | Error::SingularM(_)
            | Error::NonTerminating => 3,
            _ => 2,
        }
    }
}

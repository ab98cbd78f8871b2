use alloc::string::String;
use core::fmt;

/// Errors across the crate. Every failure is a contract violation or an
/// exhausted search budget; there are no tolerance-based failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Vector/matrix dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A radicand passed to the quadratic tower is not square-free or < 2.
    InvalidRadicand(u64),
    /// Division by an exactly-zero scalar.
    DivisionByZero,
    /// A cone that must not contain a line contains one.
    ContainsLine,
    /// The operation requires a pointed cone.
    NotPointed,
    /// Monoid construction from an empty (or all-zero) generator list.
    EmptyMonoid,
    /// A truncation parameter must be a positive integer.
    InvalidTruncation,
    /// Generators of an `N`-lattice monoid must be non-negative.
    NegativeGenerator,
    /// An input point lies outside the cone where it must lie inside.
    OutsideCone,
    /// The point is not in the interior of the support cone.
    NotInterior,
    /// The target monoid is not contained in the image of the map.
    SurjectivityFailed,
    /// A search budget was exhausted; carries the tightest bound achieved,
    /// formatted as an exact rational, when one exists.
    BudgetExhausted { achieved: Option<String> },
    /// The divisor has no sections (no lattice points in its polytope).
    NoSections,
    /// The section polytope is empty.
    EmptyPolytope,
    /// The fan of a PL function is inconsistent (pieces disagree on a face)
    /// or does not cover its support cone.
    InconsistentFan(String),
    /// A ray-truncation certificate failed: `f(i*lambda*s) != i*f(lambda*s)`.
    TruncationCertificate(String),
    /// Catch-all for malformed inputs, with a short description.
    InvalidInput(String),
    /// An internal postcondition re-check failed. Indicates a bug.
    PostconditionFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::InvalidRadicand(d) => write!(f, "radicand {d} is not square-free and > 1"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ContainsLine => write!(f, "cone contains a line"),
            Error::NotPointed => write!(f, "cone is not pointed"),
            Error::EmptyMonoid => write!(f, "monoid has no nonzero generators"),
            Error::InvalidTruncation => write!(f, "truncation indices must be positive"),
            Error::NegativeGenerator => write!(f, "N-lattice monoid generator has a negative entry"),
            Error::OutsideCone => write!(f, "point lies outside the cone"),
            Error::NotInterior => write!(f, "point is not interior to the support cone"),
            Error::SurjectivityFailed => write!(f, "target monoid is not contained in the image"),
            Error::BudgetExhausted { achieved } => match achieved {
                Some(a) => write!(f, "search budget exhausted; tightest bound achieved: {a}"),
                None => write!(f, "search budget exhausted"),
            },
            Error::NoSections => write!(f, "divisor has no sections"),
            Error::EmptyPolytope => write!(f, "section polytope is empty"),
            Error::InconsistentFan(msg) => write!(f, "inconsistent fan: {msg}"),
            Error::TruncationCertificate(msg) => write!(f, "truncation certificate failed: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::PostconditionFailed(msg) => write!(f, "postcondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

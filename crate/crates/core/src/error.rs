use alloc::boxed::Box;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every numeric layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    Domain(&'static str),
    /// The result would exceed the largest finite `f64`.
    Overflow(&'static str),
    /// A configuration violates one of its invariants.
    InvalidConfig(&'static str),
    /// A series did not reach its tolerance within `max_terms`.
    NotConverged {
        what: &'static str,
        terms: u64,
        tail_estimate: f64,
    },
    /// A gamma-function pole makes the requested quantity singular.
    Pole(&'static str),
    /// Combination of inputs for which no evaluation route exists.
    Unsupported(&'static str),
    /// A grid evaluation failed at the given cell.
    Cell {
        row: usize,
        col: usize,
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures caused by series or quadrature convergence, as
    /// opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        match self {
            Error::NotConverged { .. } => true,
            Error::Cell { source, .. } => source.is_convergence(),
            _ => false,
        }
    }

    pub(crate) fn at_cell(self, row: usize, col: usize) -> Error {
        Error::Cell {
            row,
            col,
            source: Box::new(self),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NotConverged {
                what,
                terms,
                tail_estimate,
            } => write!(
                f,
                "{what}: tolerance not reached after {terms} terms (tail estimate {tail_estimate:e})"
            ),
            Error::Pole(msg) => write!(f, "pole: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Cell { row, col, source } => {
                write!(f, "grid cell (row {row}, column {col}): {source}")
            }
        }
    }
}

impl core::error::Error for Error {}

use thiserror::Error;

/// Errors raised by constructions and checks across the crate.
///
/// Failed verifications are not errors; they come back as data with a
/// witness. These variants cover malformed input and exceeded caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("algebra must have at least one atom")]
    DegenerateAlgebra,

    #[error("quotient collapses the algebra (0 = 1)")]
    DegenerateQuotient,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("no member of the family contains {0}")]
    Cofinality(String),

    #[error("element is not covered by any stage")]
    Uncovered,

    #[error("synthesis failed: {0}")]
    Synthesis(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

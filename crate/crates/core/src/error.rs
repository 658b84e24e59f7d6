use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("form is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: usize },

    #[error("pi-degree underflow: term of degree {found} cannot be divided by pi^{divisor}")]
    DegreeUnderflow { found: u32, divisor: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} = {value} is out of range ({allowed})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        allowed: String,
    },

    /// A theorem-level identity did not hold. Never expected in practice.
    #[error("identity violated in {check}: {detail}")]
    IdentityViolation { check: &'static str, detail: String },
}

pub(crate) fn out_of_range(what: &'static str, value: usize, allowed: &str) -> Error {
    Error::OutOfRange {
        what,
        value,
        allowed: String::from(allowed),
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] glvol_core::Error),

    #[error("{what} = {value} is out of range ({allowed})")]
    OutOfRange {
        what: &'static str,
        value: String,
        allowed: &'static str,
    },

    /// The chart was evaluated too close to its singular locus.
    #[error("chart degenerate: leading entry modulus {modulus:e} below {threshold:e}")]
    Degenerate { modulus: f64, threshold: f64 },

    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl ToString, allowed: &'static str) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            allowed,
        }
    }

    pub(crate) fn format(what: &'static str, detail: impl ToString) -> Self {
        Error::Format {
            what,
            detail: detail.to_string(),
        }
    }
}

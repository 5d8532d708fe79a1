use thiserror::Error;

/// Everything that can go wrong while reading or analyzing a curve.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("polynomial is not homogeneous: degrees {degrees:?} appear (offending terms: {offending})")]
    Inhomogeneous { degrees: Vec<u32>, offending: String },

    #[error("degree {0} is too small (curves of degree at least 2 are supported)")]
    DegreeTooSmall(u32),

    #[error("curve is not reduced: {0}")]
    NotReduced(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("check `{check}` failed: {detail}")]
    HardFailure { check: String, detail: String },

    #[error("scan horizon {horizon} too small: {detail}; rerun with a larger --kmax")]
    HorizonTooSmall { horizon: usize, detail: String },

    #[error("exact certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub fn hard(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::HardFailure {
            check: check.into(),
            detail: detail.into(),
        }
    }

    /// True for errors caused by the input rather than by the analysis.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Inhomogeneous { .. }
                | Error::DegreeTooSmall(_)
                | Error::NotReduced(_)
                | Error::InvalidInput(_)
                | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type.
///
/// `CapExceeded` is kept separate from validation errors because callers map
/// it to a distinct exit code: it signals a desk-scale limit, not a malformed
/// input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("{what} is {actual}, which exceeds the configured cap {cap}; raise the cap to proceed")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

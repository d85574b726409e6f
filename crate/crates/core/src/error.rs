use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("k = {k} is outside the supported range {min}..={max} for {what}")]
    Capacity {
        what: &'static str,
        k: usize,
        min: usize,
        max: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, found: usize) -> crate::Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }

    pub(crate) fn check_k(what: &'static str, k: usize, min: usize, max: usize) -> crate::Result<()> {
        if (min..=max).contains(&k) {
            Ok(())
        } else {
            Err(Error::Capacity { what, k, min, max })
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input exceeded a configured enumeration or density cap.
    #[error("{what} exceeds the configured limit ({got} > {limit})")]
    SizeLimit {
        what: &'static str,
        limit: u128,
        got: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A floating-point quantity that must be an integer was not close to one.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("unsupported group pairing: {0}")]
    Unsupported(String),

    #[error("under-sampled: {shots} shots given, at least {required} required")]
    UnderSampled { shots: u64, required: u64 },

    #[error("search exhausted after {tries} tries")]
    Exhausted { tries: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, got: u128, limit: u128) -> Result<()> {
    if got > limit {
        Err(Error::SizeLimit { what, limit, got })
    } else {
        Ok(())
    }
}

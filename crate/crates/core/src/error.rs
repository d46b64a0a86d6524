use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside [{lo}, {hi}]")]
    Index { index: i64, lo: i64, hi: i64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("quadrature too small: {0}")]
    QuadratureUndersized(String),

    #[error("finite-difference step must be positive, got {0}")]
    Step(f64),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_index(index: i64, lo: i64, hi: i64) -> Result<()> {
    if index < lo || index > hi {
        return Err(Error::Index { index, lo, hi });
    }
    Ok(())
}

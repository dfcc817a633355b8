use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    #[error("{field} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        field: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("state has squared norm {norm_sqr}, expected 1")]
    UnnormalizedState { norm_sqr: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("empty parameter range")]
    EmptyRange,
}

impl Error {
    /// Name of the offending input, when the error concerns a single field.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::NonFinite { field, .. } | Error::OutOfRange { field, .. } => Some(field),
            _ => None,
        }
    }
}

pub(crate) fn check_finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { field, value })
    }
}

pub(crate) fn check_range(field: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    check_finite(field, value)?;
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            field,
            value,
            min,
            max,
        })
    }
}

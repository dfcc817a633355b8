use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};

/// Tolerance on the sum of a [`ProbVector4`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Joint outcome probabilities for `(S1,S1'), (S1,S2'), (S2,S1'), (S2,S2')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct ProbVector4([f64; 4]);

const FIELDS: [&str; 4] = ["eps1", "eps2", "eps3", "eps4"];

impl ProbVector4 {
    pub fn new(eps: [f64; 4]) -> Result<Self> {
        for (name, &e) in FIELDS.iter().zip(&eps) {
            check_range(name, e, 0.0, 1.0)?;
        }
        let sum: f64 = eps.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self(eps))
    }

    /// For values that are a probability distribution by construction.
    pub(crate) fn from_parts(eps: [f64; 4]) -> Self {
        debug_assert!(Self::new(eps).is_ok(), "not a distribution: {eps:?}");
        Self(eps)
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    pub fn eps1(&self) -> f64 {
        self.0[0]
    }
    pub fn eps2(&self) -> f64 {
        self.0[1]
    }
    pub fn eps3(&self) -> f64 {
        self.0[2]
    }
    pub fn eps4(&self) -> f64 {
        self.0[3]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `|eps1*eps4 - eps2*eps3|`, zero exactly for product distributions.
    pub fn product_defect(&self) -> f64 {
        (self.0[0] * self.0[3] - self.0[1] * self.0[2]).abs()
    }
}

impl TryFrom<[f64; 4]> for ProbVector4 {
    type Error = Error;

    fn try_from(eps: [f64; 4]) -> Result<Self> {
        Self::new(eps)
    }
}

impl From<ProbVector4> for [f64; 4] {
    fn from(v: ProbVector4) -> Self {
        v.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProbVector4::new([0.25; 4]).is_ok());
        assert!(ProbVector4::new([0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(matches!(
            ProbVector4::new([0.5, 0.5, 0.5, 0.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(ProbVector4::new([f64::NAN, 0.0, 0.0, 1.0]).is_err());
    }
}

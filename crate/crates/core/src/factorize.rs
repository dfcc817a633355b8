//! Whether a joint distribution over the four outcomes is the product of two
//! independent binary marginals.

use serde::{Deserialize, Serialize};

use crate::game::MixedProfile;
use crate::prob::ProbVector4;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub factorizable: bool,
    /// Present iff `factorizable`.
    pub witness: Option<MixedProfile>,
    /// `|eps_i - reconstructed_i|` for the candidate built from the marginals.
    pub residuals: [f64; 4],
}

impl FactorizationResult {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0_f64, |m, r| m.max(*r))
    }
}

/// `(eps1 + eps2, eps1 + eps3)`: the probabilities that Alice, respectively
/// Bob, end up on their first strategy.
pub fn marginals(eps: &ProbVector4) -> MixedProfile {
    let [e1, e2, e3, _] = eps.as_array();
    MixedProfile::at((e1 + e2).clamp(0.0, 1.0), (e1 + e3).clamp(0.0, 1.0))
}

/// The product distribution `(pq, p(1-q), (1-p)q, (1-p)(1-q))`.
pub fn make_factorizable(profile: MixedProfile) -> ProbVector4 {
    let MixedProfile { p, q } = profile;
    ProbVector4::from_parts([p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)])
}

/// Rebuilds the product distribution from the marginals and compares.
///
/// The marginals are the only possible witness, so no search is needed. All
/// four residuals equal `|eps1*eps4 - eps2*eps3|` in exact arithmetic.
pub fn check_factorizable(eps: &ProbVector4, tol: f64) -> FactorizationResult {
    let witness = marginals(eps);
    let rebuilt = make_factorizable(witness).as_array();
    let given = eps.as_array();
    let mut residuals = [0.0; 4];
    for i in 0..4 {
        residuals[i] = (given[i] - rebuilt[i]).abs();
    }
    let factorizable = residuals.iter().all(|r| *r <= tol);
    FactorizationResult {
        factorizable,
        witness: factorizable.then_some(witness),
        residuals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(e: [f64; 4]) -> ProbVector4 {
        ProbVector4::new(e).unwrap()
    }

    #[test]
    fn uniform_is_factorizable() {
        let r = check_factorizable(&pv([0.25; 4]), DEFAULT_TOL);
        assert!(r.factorizable);
        assert_eq!(r.witness, Some(MixedProfile::at(0.5, 0.5)));
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn bell_outcome_is_not() {
        let r = check_factorizable(&pv([0.5, 0.0, 0.0, 0.5]), DEFAULT_TOL);
        assert!(!r.factorizable);
        assert!(r.witness.is_none());
        assert_eq!(r.residuals, [0.25; 4]);
    }

    #[test]
    fn constructed_product_round_trips() {
        let eps = pv([0.21, 0.09, 0.49, 0.21]);
        let r = check_factorizable(&eps, DEFAULT_TOL);
        assert!(r.factorizable);
        let w = r.witness.unwrap();
        assert!((w.p - 0.3).abs() < 1e-15 && (w.q - 0.7).abs() < 1e-15);
    }

    #[test]
    fn marginals_examples() {
        assert_eq!(marginals(&pv([1.0, 0.0, 0.0, 0.0])), MixedProfile::at(1.0, 1.0));
        assert_eq!(marginals(&pv([0.5, 0.0, 0.0, 0.5])), MixedProfile::at(0.5, 0.5));
        let m = marginals(&pv([0.21, 0.09, 0.49, 0.21]));
        assert!((m.p - 0.3).abs() < 1e-15 && (m.q - 0.7).abs() < 1e-15);
    }

    #[test]
    fn make_factorizable_examples() {
        let m = |p, q| make_factorizable(MixedProfile::at(p, q)).as_array();
        assert_eq!(m(0.0, 0.0), [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(m(1.0, 0.0), [0.0, 1.0, 0.0, 0.0]);
        let e = m(0.3, 0.7);
        for (a, b) in e.iter().zip([0.21, 0.09, 0.49, 0.21]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_entries_need_no_special_case() {
        assert!(check_factorizable(&pv([0.0, 0.0, 0.0, 1.0]), DEFAULT_TOL).factorizable);
        assert!(!check_factorizable(&pv([0.0, 0.5, 0.5, 0.0]), DEFAULT_TOL).factorizable);
    }
}

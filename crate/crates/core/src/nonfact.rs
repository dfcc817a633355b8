//! Two games whose outcome probabilities are not forced to factorize.
//!
//! The first blends the product distribution with an anti-correlated one under
//! a mixing parameter `k`; at `k = 0` it is the classical game. The second keeps
//! only normalization and the marginal relations `p = eps1 + eps2`,
//! `q = eps1 + eps3`, treating `eps1` as an exogenous constant. Read as a coin
//! toss, `eps1..eps4` are `Pr(H,H), Pr(H,T), Pr(T,H), Pr(T,T)`, and each player
//! controls the bias of one coin.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_range, Error, Result};
use crate::game::{GameMatrix, MixedProfile, PayoffPair};
use crate::nash::{solve_linear_gain, Method, NashReport};
use crate::prob::ProbVector4;
use crate::quantum::quantum_payoffs;

/// Mixing parameter of the first model, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct KParam(f64);

impl KParam {
    pub fn new(k: f64) -> Result<Self> {
        check_range("k", k, 0.0, 1.0).map(Self)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for KParam {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<KParam> for f64 {
    fn from(v: KParam) -> f64 {
        v.0
    }
}

/// The constant `eps1` of the second model. Only finiteness is enforced; see
/// [`approach2_admissibility`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Eps1Param(f64);

impl Eps1Param {
    pub fn new(eps1: f64) -> Result<Self> {
        check_finite("eps1", eps1).map(Self)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Eps1Param {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Eps1Param> for f64 {
    fn from(v: Eps1Param) -> f64 {
        v.0
    }
}

pub fn approach1_distribution(profile: MixedProfile, k: KParam) -> ProbVector4 {
    let MixedProfile { p, q } = profile;
    let k = k.value();
    let e1 = (2.0 * k - 1.0).powi(2) * p * q;
    let e2 = (1.0 - k) * p * (1.0 - q) + k * q * (1.0 - p);
    let e3 = (1.0 - k) * q * (1.0 - p) + k * p * (1.0 - q);
    let e4 = 4.0 * k * (1.0 - k) * p * q + (1.0 - p) * (1.0 - q);
    ProbVector4::from_parts([e1, e2, e3, e4])
}

pub fn approach1_payoffs(game: &GameMatrix, profile: MixedProfile, k: KParam) -> PayoffPair {
    quantum_payoffs(game, &approach1_distribution(profile, k))
}

/// Equilibria of the first model.
///
/// Alice's marginal gain in `p` is
/// `[alpha(1-2k)² - beta - gamma + theta(1 + 4k(1-k))] q + (beta - theta) - k(beta - gamma)`,
/// and symmetrically for Bob.
pub fn approach1_nash(game: &GameMatrix, k: KParam) -> NashReport {
    let kv = k.value();
    let slope = game.alpha * (1.0 - 2.0 * kv).powi(2) - game.beta - game.gamma_pay
        + game.theta_pay * (1.0 + 4.0 * kv * (1.0 - kv));
    let offset = (game.beta - game.theta_pay) - kv * (game.beta - game.gamma_pay);
    let solutions = solve_linear_gain(slope, offset, game.scale());
    NashReport::from_solutions(solutions, Method::Analytic, |pr| {
        approach1_payoffs(game, pr, k)
    })
}

/// `Π_A = eps1 (alpha - beta - gamma + theta) + (beta - theta) p + (gamma - theta) q + theta`;
/// Bob's payoff swaps the roles of `beta` and `gamma`.
pub fn approach2_payoffs(game: &GameMatrix, profile: MixedProfile, eps1: Eps1Param) -> PayoffPair {
    let MixedProfile { p, q } = profile;
    let base = eps1.value() * game.interaction() + game.theta_pay;
    let own = game.beta - game.theta_pay;
    let other = game.gamma_pay - game.theta_pay;
    PayoffPair {
        pi_a: base + own * p + other * q,
        pi_b: base + other * p + own * q,
    }
}

/// Each player's gain is the constant `beta - theta`, so the game has a single
/// pure equilibrium unless `beta == theta`, where every profile is one.
pub fn approach2_nash(game: &GameMatrix, eps1: Eps1Param) -> NashReport {
    let solutions = solve_linear_gain(0.0, game.beta - game.theta_pay, game.scale());
    NashReport::from_solutions(solutions, Method::Analytic, |pr| {
        approach2_payoffs(game, pr, eps1)
    })
}

/// The implied outcome probabilities of the second model at a profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    /// `(eps1, p - eps1, q - eps1, 1 - (p + q) + eps1)`; may leave `[0, 1]`.
    pub eps: [f64; 4],
    pub negative: [bool; 4],
    /// True iff `max(0, p + q - 1) <= eps1 <= min(p, q)`.
    pub admissible: bool,
}

pub fn approach2_admissibility(profile: MixedProfile, eps1: Eps1Param) -> Admissibility {
    let MixedProfile { p, q } = profile;
    let e1 = eps1.value();
    let eps = [e1, p - e1, q - e1, 1.0 - (p + q) + e1];
    let negative = eps.map(|e| e < 0.0);
    let admissible = (0.0_f64).max(p + q - 1.0) <= e1 && e1 <= p.min(q);
    Admissibility {
        eps,
        negative,
        admissible,
    }
}

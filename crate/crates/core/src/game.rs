//! The symmetric bimatrix game and its classical mixed-strategy analysis.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_range, Result};
use crate::nash::{solve_linear_gain, Method, NashReport};

/// Payoff entries of the symmetric game.
///
/// `(alpha, alpha)` is paid on `(S1, S1')`, `(beta, gamma_pay)` on `(S1, S2')`,
/// `(gamma_pay, beta)` on `(S2, S1')` and `(theta_pay, theta_pay)` on `(S2, S2')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameMatrix {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_pay: f64,
    pub theta_pay: f64,
}

impl GameMatrix {
    pub fn new(alpha: f64, beta: f64, gamma_pay: f64, theta_pay: f64) -> Result<Self> {
        Ok(Self {
            alpha: check_finite("alpha", alpha)?,
            beta: check_finite("beta", beta)?,
            gamma_pay: check_finite("gamma_pay", gamma_pay)?,
            theta_pay: check_finite("theta_pay", theta_pay)?,
        })
    }

    /// Prisoners' Dilemma: `(3, 0, 5, 1)`.
    pub fn prisoners_dilemma() -> Self {
        Self {
            alpha: 3.0,
            beta: 0.0,
            gamma_pay: 5.0,
            theta_pay: 1.0,
        }
    }

    /// Re-checks the invariants, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.alpha, self.beta, self.gamma_pay, self.theta_pay).map(|_| ())
    }

    /// `alpha - beta - gamma_pay + theta_pay`, the coefficient of the `pq` term.
    pub fn interaction(&self) -> f64 {
        self.alpha - self.beta - self.gamma_pay + self.theta_pay
    }

    /// Largest absolute payoff entry.
    pub fn scale(&self) -> f64 {
        [self.alpha, self.beta, self.gamma_pay, self.theta_pay]
            .iter()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Alice's and Bob's payoff weights for the four joint outcomes.
    pub fn outcome_weights(&self) -> ([f64; 4], [f64; 4]) {
        (
            [self.alpha, self.beta, self.gamma_pay, self.theta_pay],
            [self.alpha, self.gamma_pay, self.beta, self.theta_pay],
        )
    }
}

/// Probabilities with which Alice (`p`) and Bob (`q`) play their first strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedProfile {
    pub p: f64,
    pub q: f64,
}

impl MixedProfile {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self {
            p: check_range("p", p, 0.0, 1.0)?,
            q: check_range("q", q, 0.0, 1.0)?,
        })
    }

    pub(crate) const fn at(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.p, self.q).map(|_| ())
    }

    pub fn is_pure(&self) -> bool {
        (self.p == 0.0 || self.p == 1.0) && (self.q == 0.0 || self.q == 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub pi_a: f64,
    pub pi_b: f64,
}

impl PayoffPair {
    pub fn new(pi_a: f64, pi_b: f64) -> Self {
        Self { pi_a, pi_b }
    }
}

pub fn classical_payoffs(game: &GameMatrix, profile: MixedProfile) -> PayoffPair {
    let MixedProfile { p, q } = profile;
    let GameMatrix {
        alpha,
        beta,
        gamma_pay: gamma,
        theta_pay: theta,
    } = *game;
    PayoffPair {
        pi_a: alpha * p * q + beta * p * (1.0 - q) + gamma * (1.0 - p) * q
            + theta * (1.0 - p) * (1.0 - q),
        pi_b: alpha * p * q + gamma * p * (1.0 - q) + beta * (1.0 - p) * q
            + theta * (1.0 - p) * (1.0 - q),
    }
}

/// All Nash equilibria of the classical mixed-strategy game.
///
/// Alice's marginal gain from raising `p` is `interaction * q + (beta - theta_pay)`,
/// and Bob's is the same expression in `p`. The equilibria follow from the sign
/// of that gain at the corners and its root inside the unit interval.
pub fn classical_nash(game: &GameMatrix) -> NashReport {
    let slope = game.interaction();
    let offset = game.beta - game.theta_pay;
    let solutions = solve_linear_gain(slope, offset, game.scale());
    NashReport::from_solutions(solutions, Method::Analytic, |pr| {
        classical_payoffs(game, pr)
    })
}

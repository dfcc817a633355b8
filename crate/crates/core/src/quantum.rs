//! Two-qubit quantization of the game.
//!
//! Both players start in `|S1 S1'⟩`. An entangling gate `J` is applied, each
//! player acts locally with a unitary `U(theta, phi)`, `J†` disentangles, and
//! the final state is measured in the basis
//! `|S1S1'⟩, |S1S2'⟩, |S2S1'⟩, |S2S2'⟩` (indices 0..3).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::game::{GameMatrix, PayoffPair};
use crate::linalg::{Matrix2, Matrix4, C64, I, ONE, ZERO};
use crate::prob::ProbVector4;

/// States whose squared norm deviates from 1 by more than this are rejected by
/// [`measure_probs`].
pub const STATE_NORM_TOL: f64 = 1e-9;

/// A player's strategy `U(theta, phi)`, `theta ∈ [0, π]`, `phi ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StrategyAngles", into = "StrategyAngles")]
pub struct Unitary2 {
    theta: f64,
    phi: f64,
    matrix: Matrix2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct StrategyAngles {
    theta: f64,
    phi: f64,
}

impl TryFrom<StrategyAngles> for Unitary2 {
    type Error = Error;
    fn try_from(a: StrategyAngles) -> Result<Self> {
        build_unitary(a.theta, a.phi)
    }
}

impl From<Unitary2> for StrategyAngles {
    fn from(u: Unitary2) -> Self {
        StrategyAngles {
            theta: u.theta,
            phi: u.phi,
        }
    }
}

impl Unitary2 {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    /// `U(0, π/2) = diag(i, -i)`.
    pub fn q_hat() -> Self {
        build_unitary(0.0, FRAC_PI_2).expect("in range")
    }
}

/// Builds
///
/// ```text
/// ⎡ e^{iφ} cos(θ/2)    sin(θ/2)        ⎤
/// ⎣ -sin(θ/2)          e^{-iφ} cos(θ/2) ⎦
/// ```
pub fn build_unitary(theta: f64, phi: f64) -> Result<Unitary2> {
    check_range("theta", theta, 0.0, PI)?;
    check_range("phi", phi, 0.0, FRAC_PI_2)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, phi);
    let matrix = Matrix2([
        [phase * c, C64::new(s, 0.0)],
        [C64::new(-s, 0.0), phase.conj() * c],
    ]);
    Ok(Unitary2 { theta, phi, matrix })
}

/// Degree of entanglement of the initial state, in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EntanglementParam(f64);

impl EntanglementParam {
    pub fn new(gamma_ent: f64) -> Result<Self> {
        check_range("gamma_ent", gamma_ent, 0.0, FRAC_PI_2).map(Self)
    }

    pub fn maximal() -> Self {
        Self(FRAC_PI_2)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EntanglementParam {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<EntanglementParam> for f64 {
    fn from(v: EntanglementParam) -> f64 {
        v.0
    }
}

/// `J = cos(γ/2) I + i sin(γ/2) D⊗D`, where `D = U(π, 0)` is the unitary that
/// plays the second strategy.
pub fn build_j_gate(gamma_ent: f64) -> Result<Matrix4> {
    let gamma = EntanglementParam::new(gamma_ent)?;
    Ok(j_gate(gamma))
}

fn j_gate(gamma: EntanglementParam) -> Matrix4 {
    let (s, c) = (gamma.value() / 2.0).sin_cos();
    let d = build_unitary(PI, 0.0).expect("in range").matrix;
    let dd = d.kron(&d);
    let mut m = Matrix4::identity();
    for (i, row) in m.0.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = *v * c + I * s * dd.0[i][j];
        }
    }
    m
}

/// A two-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State4(pub [C64; 4]);

impl State4 {
    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        State4(amps)
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// The fixed parts of the protocol for one entanglement level.
#[derive(Debug, Clone)]
pub struct Protocol {
    gamma: EntanglementParam,
    j_adj: Matrix4,
    initial: [C64; 4],
}

impl Protocol {
    pub fn new(gamma: EntanglementParam) -> Self {
        let j = j_gate(gamma);
        let initial = j.apply(&State4::basis(0).0);
        Self {
            gamma,
            j_adj: j.adjoint(),
            initial,
        }
    }

    pub fn gamma(&self) -> EntanglementParam {
        self.gamma
    }

    /// `J† (U_A ⊗ U_B) J |S1 S1'⟩`.
    pub fn evolve(&self, ua: &Unitary2, ub: &Unitary2) -> State4 {
        let local = ua.matrix.kron(&ub.matrix);
        State4(self.j_adj.apply(&local.apply(&self.initial)))
    }

    /// Payoffs straight from the amplitudes, skipping the normalization check.
    pub fn payoffs(&self, game: &GameMatrix, ua: &Unitary2, ub: &Unitary2) -> PayoffPair {
        let amps = self.evolve(ua, ub).0;
        let (wa, wb) = game.outcome_weights();
        let mut pa = 0.0;
        let mut pb = 0.0;
        for i in 0..4 {
            let e = amps[i].norm_sqr();
            pa += wa[i] * e;
            pb += wb[i] * e;
        }
        PayoffPair { pi_a: pa, pi_b: pb }
    }
}

pub fn evolve(ua: &Unitary2, ub: &Unitary2, gamma_ent: EntanglementParam) -> State4 {
    Protocol::new(gamma_ent).evolve(ua, ub)
}

/// Outcome probabilities `|amplitude_i|²`, rescaled so they sum to exactly one
/// up to rounding.
pub fn measure_probs(state: &State4) -> Result<ProbVector4> {
    let norm_sqr = state.norm_sqr();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > STATE_NORM_TOL {
        return Err(Error::UnnormalizedState { norm_sqr });
    }
    let mut eps = [0.0; 4];
    for (e, a) in eps.iter_mut().zip(&state.0) {
        *e = (a.norm_sqr() / norm_sqr).min(1.0);
    }
    Ok(ProbVector4::from_parts(eps))
}

pub fn quantum_payoffs(game: &GameMatrix, eps: &ProbVector4) -> PayoffPair {
    let [e1, e2, e3, e4] = eps.as_array();
    PayoffPair {
        pi_a: game.alpha * e1 + game.beta * e2 + game.gamma_pay * e3 + game.theta_pay * e4,
        pi_b: game.alpha * e1 + game.gamma_pay * e2 + game.beta * e3 + game.theta_pay * e4,
    }
}

//! Analysis of symmetric 2×2 bimatrix games under four probability regimes:
//! classical mixed strategies, two-qubit quantum strategies with an entangling
//! gate, and two games whose joint outcome probabilities need not factorize.
//!
//! The game is always the symmetric matrix
//!
//! ```text
//!              Bob: S1'              S2'
//! Alice: S1  (alpha, alpha)     (beta, gamma_pay)
//!        S2  (gamma_pay, beta)  (theta_pay, theta_pay)
//! ```
//!
//! and joint outcome probabilities are ordered `(S1,S1'), (S1,S2'), (S2,S1'), (S2,S2')`.

mod error;
pub mod factorize;
pub mod game;
pub mod linalg;
pub mod nash;
pub mod nonfact;
pub mod prob;
pub mod quantum;
pub mod search;

pub use error::{Error, Result};
pub use factorize::{check_factorizable, make_factorizable, marginals, FactorizationResult};
pub use game::{classical_nash, classical_payoffs, GameMatrix, MixedProfile, PayoffPair};
pub use nash::{verify_nash, Equilibrium, EquilibriumKind, Method, NashReport, Solution};
pub use nonfact::{
    approach1_distribution, approach1_nash, approach1_payoffs, approach2_admissibility,
    approach2_nash, approach2_payoffs, Admissibility, Eps1Param, KParam,
};
pub use prob::ProbVector4;
pub use quantum::{
    build_j_gate, build_unitary, evolve, measure_probs, quantum_payoffs, EntanglementParam,
    State4, Unitary2,
};
pub use search::{
    best_response, entanglement_sweep, find_quantum_ne, ApproxNE, GridPoint, GridSpec, Role,
    SweepRow,
};

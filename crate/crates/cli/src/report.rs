//! The JSON document written for every run.

use qgame::{
    Admissibility, ApproxNE, FactorizationResult, MixedProfile, NashReport, PayoffPair,
    ProbVector4,
};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA: &str = "qgame-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: RunConfig,
    pub results: Results,
}

impl Report {
    pub fn new(config: RunConfig, results: Results) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            config,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Results {
    /// Analytic equilibria of the classical or a non-factorizable model.
    Nash {
        report: NashReport,
        /// Every equilibrium vertex passed an independent deviation check.
        certified: bool,
        /// Implied outcome probabilities at each equilibrium vertex (second
        /// non-factorizable model only).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        admissibility: Option<Vec<Vec<Admissibility>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        at_profile: Option<ProfileEval>,
    },
    Quantum {
        gamma_ent: f64,
        equilibria: Vec<ApproxNE>,
    },
    Factorization {
        eps: ProbVector4,
        result: FactorizationResult,
    },
    Sweep {
        parameter: String,
        samples: Vec<Sample>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEval {
    pub profile: MixedProfile,
    pub payoffs: PayoffPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissibility: Option<Admissibility>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub value: f64,
    pub results: Results,
}

//! Executes a [`RunConfig`].

use std::io::{self, Write};

use qgame::search::write_sweep_csv;
use qgame::{
    approach1_nash, approach1_payoffs, approach2_admissibility, approach2_nash,
    approach2_payoffs, check_factorizable, classical_nash, classical_payoffs, find_quantum_ne,
    verify_nash, EntanglementParam, Eps1Param, GameMatrix, KParam, MixedProfile, NashReport,
    PayoffPair, SweepRow,
};

use crate::config::{Model, Params, RunConfig};
use crate::error::CliError;
use crate::report::{ProfileEval, Report, Results, Sample};

/// Runs a single analysis or, when `config.sweep` is set, the whole sweep.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let results = match &config.sweep {
        Some(values) => run_sweep(config, values)?,
        None => run_single(config, &config.params)?,
    };
    Ok(Report::new(config.clone(), results))
}

fn game_of(config: &RunConfig) -> Result<&GameMatrix, CliError> {
    config.game.as_ref().ok_or(CliError::MissingParameter {
        model: config.model.name(),
        field: "alpha",
    })
}

fn missing(model: Model, field: &'static str) -> CliError {
    CliError::MissingParameter {
        model: model.name(),
        field,
    }
}

fn run_single(config: &RunConfig, params: &Params) -> Result<Results, CliError> {
    let model = config.model;
    Ok(match model {
        Model::Classical => {
            let game = *game_of(config)?;
            nash_results(
                classical_nash(&game),
                move |pr| classical_payoffs(&game, pr),
                params.profile,
                config.tol,
                None,
            )
        }
        Model::Approach1 => {
            let game = *game_of(config)?;
            let k = params.k.ok_or_else(|| missing(model, "k"))?;
            nash_results(
                approach1_nash(&game, k),
                move |pr| approach1_payoffs(&game, pr, k),
                params.profile,
                config.tol,
                None,
            )
        }
        Model::Approach2 => {
            let game = *game_of(config)?;
            let eps1 = params.eps1.ok_or_else(|| missing(model, "eps1"))?;
            nash_results(
                approach2_nash(&game, eps1),
                move |pr| approach2_payoffs(&game, pr, eps1),
                params.profile,
                config.tol,
                Some(eps1),
            )
        }
        Model::Quantum => {
            let game = game_of(config)?;
            let gamma = params.gamma_ent.ok_or_else(|| missing(model, "gamma-ent"))?;
            Results::Quantum {
                gamma_ent: gamma.value(),
                equilibria: find_quantum_ne(game, gamma, &config.grid, config.tol),
            }
        }
        Model::Factorize => {
            let eps = params.eps.ok_or_else(|| missing(model, "eps"))?;
            Results::Factorization {
                eps,
                result: check_factorizable(&eps, config.tol),
            }
        }
    })
}

fn nash_results<F>(
    report: NashReport,
    payoff: F,
    profile: Option<MixedProfile>,
    tol: f64,
    eps1: Option<Eps1Param>,
) -> Results
where
    F: Fn(MixedProfile) -> PayoffPair + Copy,
{
    let certified = report.equilibria.iter().all(|e| {
        e.solution
            .vertices()
            .into_iter()
            .all(|v| verify_nash(payoff, v, tol))
    });
    let admissibility = eps1.map(|e1| {
        report
            .equilibria
            .iter()
            .map(|e| {
                e.solution
                    .vertices()
                    .into_iter()
                    .map(|v| approach2_admissibility(v, e1))
                    .collect()
            })
            .collect()
    });
    let at_profile = profile.map(|pr| ProfileEval {
        profile: pr,
        payoffs: payoff(pr),
        admissibility: eps1.map(|e1| approach2_admissibility(pr, e1)),
    });
    Results::Nash {
        report,
        certified,
        admissibility,
        at_profile,
    }
}

fn run_sweep(config: &RunConfig, values: &[f64]) -> Result<Results, CliError> {
    let parameter = config.model.sweep_parameter().ok_or_else(|| {
        CliError::config("model", format!("model {} has no parameter to sweep", config.model))
    })?;
    let samples = values
        .iter()
        .map(|&value| {
            let params = params_at(config, value)?;
            Ok(Sample {
                value,
                results: run_single(config, &params)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Results::Sweep {
        parameter: parameter.to_string(),
        samples,
    })
}

fn params_at(config: &RunConfig, value: f64) -> Result<Params, CliError> {
    let mut params = config.params.clone();
    match config.model {
        Model::Quantum => params.gamma_ent = Some(EntanglementParam::new(value)?),
        Model::Approach1 => params.k = Some(KParam::new(value)?),
        Model::Approach2 => params.eps1 = Some(Eps1Param::new(value)?),
        Model::Classical | Model::Factorize => unreachable!("checked by run_sweep"),
    }
    Ok(params)
}

/// Header of the CSV written for sweeps of the non-quantum models.
pub fn nash_csv_header(parameter: &str) -> String {
    format!("{parameter},kind,p,q,pi_a,pi_b")
}

/// Writes a sweep report as CSV: one line per equilibrium (quantum) or per
/// equilibrium vertex (other models).
pub fn write_csv<W: Write>(report: &Report, mut out: W) -> io::Result<()> {
    let Results::Sweep { parameter, samples } = &report.results else {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "only sweep reports have a CSV form",
        ));
    };
    if report.config.model == Model::Quantum {
        let rows: Vec<SweepRow> = samples
            .iter()
            .filter_map(|s| match &s.results {
                Results::Quantum {
                    gamma_ent,
                    equilibria,
                } => Some(SweepRow {
                    gamma_ent: *gamma_ent,
                    equilibria: equilibria.clone(),
                }),
                _ => None,
            })
            .collect();
        return write_sweep_csv(&rows, out);
    }
    writeln!(out, "{}", nash_csv_header(parameter))?;
    for sample in samples {
        let Results::Nash { report: nash, .. } = &sample.results else {
            continue;
        };
        for eq in &nash.equilibria {
            let kind = serde_json::to_value(eq.kind).expect("kind serializes");
            let kind = kind.as_str().unwrap_or_default();
            for (v, pay) in eq.solution.vertices().iter().zip(&eq.payoffs) {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    sample.value, kind, v.p, v.q, pay.pi_a, pay.pi_b
                )?;
            }
        }
    }
    Ok(())
}

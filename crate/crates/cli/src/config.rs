//! Command-line and config-file parsing into a validated [`RunConfig`].

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use qgame::search::{linspace, GridSpec};
use qgame::{EntanglementParam, Eps1Param, GameMatrix, KParam, MixedProfile, ProbVector4};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qgame", version, about = "Classical, quantum and non-factorizable 2x2 games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Payoffs and equilibria for one model and parameter value.
    Analyze(AnalyzeArgs),
    /// Repeat an analysis over a range of the model parameter.
    Sweep(SweepArgs),
    /// Decide whether four outcome probabilities factorize.
    Factorize(FactorizeArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Model name; same as --model.
    #[arg(value_name = "MODEL")]
    pub model_name: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_name = "MODEL")]
    pub model_name: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Evenly spaced samples as START:END[:COUNT].
    #[arg(long, conflicts_with = "values")]
    pub range: Option<String>,
    /// Explicit comma-separated sample values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
    /// Where to write the CSV table (stdout when omitted).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    /// eps1 eps2 eps3 eps4
    #[arg(num_args = 4, value_name = "EPS", allow_hyphen_values = true)]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// JSON file supplying any of the options below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_pay: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_pay: Option<f64>,
    /// Entanglement of the initial state, in [0, pi/2].
    #[arg(long)]
    pub gamma_ent: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps1: Option<f64>,
    /// Four comma-separated outcome probabilities.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Option<Vec<f64>>,
    /// Also report payoffs at this profile, given as P,Q.
    #[arg(long, value_delimiter = ',')]
    pub profile: Option<Vec<f64>>,
    /// Strategy grid as THETAxPHI, e.g. 101x51.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Where to write the JSON report (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Classical,
    Quantum,
    Approach1,
    Approach2,
    Factorize,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Classical => "classical",
            Model::Quantum => "quantum",
            Model::Approach1 => "approach1",
            Model::Approach2 => "approach2",
            Model::Factorize => "factorize",
        }
    }

    /// The parameter a sweep varies, if the model has one.
    pub fn sweep_parameter(self) -> Option<&'static str> {
        match self {
            Model::Quantum => Some("gamma_ent"),
            Model::Approach1 => Some("k"),
            Model::Approach2 => Some("eps1"),
            Model::Classical | Model::Factorize => None,
        }
    }

    fn default_tol(self) -> f64 {
        match self {
            Model::Quantum => qgame::search::DEFAULT_TOL,
            _ => qgame::factorize::DEFAULT_TOL,
        }
    }
}

impl FromStr for Model {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "classical" => Model::Classical,
            "quantum" => Model::Quantum,
            "approach1" => Model::Approach1,
            "approach2" => Model::Approach2,
            "factorize" => Model::Factorize,
            other => return Err(CliError::UnknownModel(other.to_string())),
        })
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Model parameters; only those belonging to the chosen model are present.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_ent: Option<EntanglementParam>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<KParam>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps1: Option<Eps1Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<ProbVector4>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<MixedProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameMatrix>,
    pub model: Model,
    pub params: Params,
    pub grid: GridSpec,
    pub tol: f64,
    /// Sample values for a sweep, in the order they will be reported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

/// Everything a config file may set. Keys follow the flag names with `_`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma_pay: Option<f64>,
    pub theta_pay: Option<f64>,
    pub gamma_ent: Option<f64>,
    pub k: Option<f64>,
    pub eps1: Option<f64>,
    pub eps: Option<Vec<f64>>,
    pub profile: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub tol: Option<f64>,
    pub range: Option<String>,
    pub values: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::config("config", e.to_string()))
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let bad = || CliError::config("grid", format!("expected THETAxPHI, got '{s}'"));
    let (t, p) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let t: usize = t.trim().parse().map_err(|_| bad())?;
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    GridSpec::new(t, p).map_err(|e| CliError::config("grid", e.to_string()))
}

/// `START:END[:COUNT]`, COUNT defaulting to 101.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::config("range", format!("expected START:END[:COUNT], got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = match parts.get(2) {
        Some(c) => c.trim().parse().map_err(|_| bad())?,
        None => 101,
    };
    linspace(start, end, count).map_err(|_| CliError::config("range", "empty range"))
}

fn default_sweep(model: Model) -> Vec<f64> {
    match model {
        Model::Quantum => linspace(0.0, FRAC_PI_2, 11),
        _ => linspace(0.0, 1.0, 101),
    }
    .expect("nonempty")
}

fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

/// What a sweep asks for on top of the common options.
#[derive(Debug, Default)]
pub struct SweepRequest {
    pub range: Option<String>,
    pub values: Option<Vec<f64>>,
    pub csv: Option<PathBuf>,
}

/// Merges flags over the optional config file and validates the result.
///
/// `positional` is a model name given as a bare argument; it and `--model`
/// must agree when both are present. `sweep` is `Some` for the `sweep`
/// subcommand.
pub fn parse_config(
    positional: Option<&str>,
    args: &CommonArgs,
    sweep: Option<SweepRequest>,
) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };

    let model_name = match (positional, args.model.as_deref()) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::config(
                "model",
                format!("positional '{a}' conflicts with --model '{b}'"),
            ))
        }
        (Some(a), _) => Some(a.to_string()),
        (None, Some(b)) => Some(b.to_string()),
        (None, None) => file.model.clone(),
    };
    let model: Model = model_name
        .ok_or(CliError::config("model", "no model given"))?
        .parse()?;

    let alpha = pick(args.alpha, file.alpha);
    let beta = pick(args.beta, file.beta);
    let gamma_pay = pick(args.gamma_pay, file.gamma_pay);
    let theta_pay = pick(args.theta_pay, file.theta_pay);
    let game = match (alpha, beta, gamma_pay, theta_pay) {
        (Some(a), Some(b), Some(c), Some(d)) => Some(GameMatrix::new(a, b, c, d)?),
        (None, None, None, None) if model == Model::Factorize => None,
        _ => {
            let missing = [
                ("alpha", alpha),
                ("beta", beta),
                ("gamma-pay", gamma_pay),
                ("theta-pay", theta_pay),
            ]
            .into_iter()
            .find(|(_, v)| v.is_none())
            .map(|(n, _)| n)
            .unwrap();
            return Err(CliError::MissingParameter {
                model: model.name(),
                field: missing,
            });
        }
    };
    if model == Model::Factorize && game.is_some() {
        return Err(CliError::UnexpectedParameter {
            model: model.name(),
            field: "alpha",
        });
    }

    let gamma_ent = pick(args.gamma_ent, file.gamma_ent);
    let k = pick(args.k, file.k);
    let eps1 = pick(args.eps1, file.eps1);
    let eps = pick(args.eps.clone(), file.eps);
    let profile = pick(args.profile.clone(), file.profile);

    let sweeping = sweep.is_some();
    let swept = if sweeping { model.sweep_parameter() } else { None };
    if sweeping && swept.is_none() {
        return Err(CliError::config(
            "model",
            format!("model {model} has no parameter to sweep"),
        ));
    }

    // Each model owns exactly one of these; the swept one must be absent.
    let owned = [
        ("gamma-ent", gamma_ent.is_some(), Model::Quantum),
        ("k", k.is_some(), Model::Approach1),
        ("eps1", eps1.is_some(), Model::Approach2),
        ("eps", eps.is_some(), Model::Factorize),
    ];
    for (field, present, owner) in owned {
        if present && (owner != model || swept.is_some()) {
            return Err(CliError::UnexpectedParameter {
                model: model.name(),
                field,
            });
        }
        if !present && owner == model && swept.is_none() {
            return Err(CliError::MissingParameter {
                model: model.name(),
                field,
            });
        }
    }

    let eps = match eps {
        Some(v) => {
            let arr: [f64; 4] = v
                .try_into()
                .map_err(|_| CliError::config("eps", "expected four values"))?;
            Some(ProbVector4::new(arr)?)
        }
        None => None,
    };
    let profile = match profile {
        Some(_) if model == Model::Factorize || model == Model::Quantum => {
            return Err(CliError::UnexpectedParameter {
                model: model.name(),
                field: "profile",
            });
        }
        Some(v) => match v.as_slice() {
            [p, q] => Some(MixedProfile::new(*p, *q)?),
            _ => return Err(CliError::config("profile", "expected P,Q")),
        },
        None => None,
    };
    let params = Params {
        gamma_ent: gamma_ent.map(EntanglementParam::new).transpose()?,
        k: k.map(KParam::new).transpose()?,
        eps1: eps1.map(Eps1Param::new).transpose()?,
        eps,
        profile,
    };

    let grid = match pick(args.grid.clone(), file.grid) {
        Some(s) => parse_grid(&s)?,
        None => GridSpec::default(),
    };
    let tol = pick(args.tol, file.tol).unwrap_or(model.default_tol());
    if !tol.is_finite() || tol < 0.0 {
        return Err(CliError::config("tol", format!("must be a finite non-negative number, got {tol}")));
    }

    let (sweep_values, csv) = match sweep {
        Some(req) => {
            let range = req.range.or(file.range);
            let values = match (range, req.values.or(file.values)) {
                (Some(r), _) => parse_range(&r)?,
                (None, Some(v)) => v,
                (None, None) => default_sweep(model),
            };
            let mut values = values;
            if values.is_empty() {
                return Err(CliError::config("range", "empty range"));
            }
            values.sort_by(f64::total_cmp);
            // Validate every sample up front so a bad one cannot abort mid-run.
            for &v in &values {
                match model {
                    Model::Quantum => EntanglementParam::new(v).map(|_| ())?,
                    Model::Approach1 => KParam::new(v).map(|_| ())?,
                    Model::Approach2 => Eps1Param::new(v).map(|_| ())?,
                    Model::Classical | Model::Factorize => unreachable!(),
                }
            }
            (Some(values), req.csv.or(file.csv))
        }
        None => (None, None),
    };

    Ok(RunConfig {
        game,
        model,
        params,
        grid,
        tol,
        sweep: sweep_values,
        out: pick(args.out.clone(), file.out),
        csv,
    })
}

pub fn parse_factorize(args: &FactorizeArgs) -> Result<RunConfig, CliError> {
    let common = CommonArgs {
        eps: Some(args.eps.clone()),
        tol: args.tol,
        out: args.out.clone(),
        ..CommonArgs::default()
    };
    parse_config(Some("factorize"), &common, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("101x51").unwrap(), GridSpec::new(101, 51).unwrap());
        assert!(parse_grid("101").is_err());
        assert!(parse_grid("1x5").is_err());
        assert!(parse_grid("ax5").is_err());
    }

    #[test]
    fn range_syntax() {
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_range("0:1").unwrap().len(), 101);
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0").is_err());
    }

    #[test]
    fn model_names() {
        assert_eq!("approach2".parse::<Model>().unwrap(), Model::Approach2);
        assert!(matches!(
            "bogus".parse::<Model>(),
            Err(CliError::UnknownModel(_))
        ));
    }
}

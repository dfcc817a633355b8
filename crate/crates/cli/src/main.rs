use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use qgame_cli::config::{parse_config, parse_factorize, Cli, Command, SweepRequest};
use qgame_cli::runner::{run, write_csv};
use qgame_cli::{CliError, Report, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.command {
        Command::Analyze(a) => parse_config(a.model_name.as_deref(), &a.common, None)?,
        Command::Sweep(s) => parse_config(
            s.model_name.as_deref(),
            &s.common,
            Some(SweepRequest {
                range: s.range.clone(),
                values: s.values.clone(),
                csv: s.csv.clone(),
            }),
        )?,
        Command::Factorize(f) => parse_factorize(f)?,
    };
    let report = run(&config)?;

    if let Command::Sweep(_) = cli.command {
        write_to(config.csv.as_deref(), |w| write_csv(&report, w))?;
        // The JSON summary accompanies the CSV only when asked for.
        if config.out.is_some() {
            emit_json(&config, &report)?;
        }
        return Ok(());
    }
    emit_json(&config, &report)
}

fn emit_json(config: &RunConfig, report: &Report) -> Result<(), CliError> {
    write_to(config.out.as_deref(), |w| writeln!(w, "{}", report.to_json()))
}

fn write_to<F>(path: Option<&Path>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let io_err = |source| CliError::Io {
        path: path.unwrap_or(Path::new("<stdout>")).to_path_buf(),
        source,
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            body(&mut w).and_then(|()| w.flush()).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|()| w.flush()).map_err(io_err)
        }
    }
}

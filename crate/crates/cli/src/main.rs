//! `mv-awgn`: second-order rate curves, minimizer sweeps, lemma checks and
//! shell-mixture simulations for the mean- and variance-constrained AWGN
//! channel.

mod commands;
mod config;
mod error;
mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, CliCommand, CommandConfig, Format, OutputArgs};
use error::{invalid, CliError, CliResult, EXIT_PARTIAL, EXIT_VALIDATION};
use output::{create_run_dir, write_file, Manifest};

/// Overrides the worker thread count.
const THREADS_ENV: &str = "MV_AWGN_THREADS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION);
    }
    match dispatch(cli.command) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(EXIT_PARTIAL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| invalid(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| invalid(format!("cannot configure {threads} threads: {e}")))
}

/// Runs the chosen command and returns the number of failed grid points.
fn dispatch(command: CliCommand) -> CliResult<usize> {
    let (config, out_dir, format) = match command {
        CliCommand::Rerun(args) => {
            let manifest = Manifest::load(&args.manifest)?;
            let out_dir = args.out_dir.unwrap_or(manifest.out_dir);
            (manifest.config, out_dir, manifest.format)
        }
        other => resolve(other),
    };
    execute(config, &out_dir, format)
}

fn resolve(command: CliCommand) -> (CommandConfig, PathBuf, Format) {
    let (config, OutputArgs { out_dir, format }) = match command {
        CliCommand::SocrCurve(a) => (
            CommandConfig::SocrCurve {
                gamma: a.channel.gamma,
                noise: a.channel.noise,
                v_list: a.v_list.0,
                eps_grid: a.eps_grid.0,
            },
            a.output,
        ),
        CliCommand::MinimizerSweep(a) => (CommandConfig::MinimizerSweep { r: a.r, v_list: a.v_list.0 }, a.output),
        CliCommand::VerifyLemmas(a) => (
            CommandConfig::VerifyLemmas {
                gamma: a.channel.gamma,
                noise: a.channel.noise,
                n_list: a.n_list.0,
                trials: a.trials,
                eps_scale: a.eps_scale,
                eps_cost: a.eps_cost,
                seed: a.seed,
            },
            a.output,
        ),
        CliCommand::Simulate(a) => (
            CommandConfig::Simulate {
                gamma: a.channel.gamma,
                noise: a.channel.noise,
                v: a.v,
                eps: a.eps,
                r: a.r,
                n_list: a.n_list.0,
                trials: a.trials,
                theta: a.theta,
                seed: a.seed,
            },
            a.output,
        ),
        CliCommand::CltCheck(a) => (
            CommandConfig::CltCheck {
                gamma: a.channel.gamma,
                noise: a.channel.noise,
                cost: a.cost.unwrap_or(a.channel.gamma),
                n_list: a.n_list.0,
                trials: a.trials,
                seed: a.seed,
            },
            a.output,
        ),
        CliCommand::Rerun(_) => unreachable!("rerun is resolved from its manifest"),
    };
    (config, out_dir, format)
}

fn execute(config: CommandConfig, out_dir: &Path, format: Format) -> CliResult<usize> {
    config.validate()?;
    let command = config.name();
    let run_dir = create_run_dir(out_dir, command)?;
    let manifest = Manifest::new(config, out_dir.to_path_buf(), format);
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|source| CliError::Manifest { path: run_dir.join("manifest.json"), source })?;
    write_file(&run_dir.join("manifest.json"), &(json + "\n"))?;

    let result = commands::run(&manifest.config)?;
    if format.csv() {
        for table in &result.tables {
            write_file(&run_dir.join(format!("{}.csv", table.name)), &table.to_csv(command))?;
        }
    }
    if format.svg() {
        for (stem, plot) in &result.plots {
            write_file(&run_dir.join(format!("{stem}.svg")), &plot.render())?;
        }
    }
    for line in &result.summary {
        println!("{line}");
    }
    if result.failures > 0 {
        eprintln!("{} grid point(s) failed; see the status column", result.failures);
    }
    println!("{}", run_dir.display());
    Ok(result.failures)
}

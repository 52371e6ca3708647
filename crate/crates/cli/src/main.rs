use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::Options;

/// Dunkl-Coulomb problem in the plane: spectra, eigenfunctions, coherent
/// states and self-verification.
#[derive(Debug, Parser)]
#[command(name = "dunkl-coulomb", version)]
struct Cli {
    /// JSON file with default option values; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of bound-state energies
    Spectrum(Options),
    /// Sample a radial eigenfunction (or Sturmian function)
    Radial(Options),
    /// Sample an angular eigenfunction on [0, 2π)
    Angular(Options),
    /// Sample a radial coherent state
    Coherent(Options),
    /// Run the verification suites
    Verify(Options),
}

fn run(cli: Cli) -> anyhow::Result<commands::Report> {
    let file = match &cli.config {
        Some(path) => Options::load(path)?,
        None => Options::default(),
    };
    let (opts, action): (Options, fn(&Options) -> anyhow::Result<commands::Report>) =
        match cli.command {
            Command::Spectrum(o) => (o, commands::spectrum),
            Command::Radial(o) => (o, commands::radial),
            Command::Angular(o) => (o, commands::angular),
            Command::Coherent(o) => (o, commands::coherent),
            Command::Verify(o) => (o, commands::verify),
        };
    let opts = opts.merged_over(file);
    let report = action(&opts)?;
    match &opts.output {
        Some(path) => std::fs::write(path, &report.text)?,
        None => std::io::stdout().lock().write_all(report.text.as_bytes())?,
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) if report.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

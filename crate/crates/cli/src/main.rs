//! `discknot`: invariants, discriminant branches, sweeps and
//! presentations for trigonal germs `y³ − P(x)·y + Q(x)`.

mod branches;
mod encode;
mod invariants;
mod present;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "discknot", version, about = "Discriminant curves and knot-group presentations of trigonal germs")]
struct Cli {
    /// Output format. `plain` and `gap` apply to `present` only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Plain,
    Gap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor number and σ of a germ, with the resultant cross-check.
    Invariants(invariants::Args),
    /// Critical curve, Newton polygon, branches and reducedness of one unfolding.
    Branches(branches::Args),
    /// Sweep the perturbation families over a range of ν.
    Verify(verify::Args),
    /// The knot-group presentation of the diagram of `y³ + x^{ν+1}`.
    Present(present::Args),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (name, outcome) = match &cli.command {
        Command::Invariants(a) => ("invariants", invariants::run(a, cli.format)),
        Command::Branches(a) => ("branches", branches::run(a, cli.format)),
        Command::Verify(a) => ("verify", verify::run(a, cli.format, cli.jobs)),
        Command::Present(a) => ("present", present::run(a, cli.format)),
    };
    match outcome {
        Ok(report) => emit(&cli, name, &report),
        Err(failure) => fail(&cli, name, failure),
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(cli: &Cli, name: &str, report: &Report) -> ExitCode {
    let text = match cli.format {
        Format::Json => report.to_json(name),
        _ => report.text.clone(),
    };
    if let Err(e) = write_out(cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for note in &report.stderr {
        eprintln!("{note}");
    }
    ExitCode::from(report.status.exit_code())
}

fn fail(cli: &Cli, name: &str, failure: Failure) -> ExitCode {
    eprintln!("error: {}", failure.message);
    if cli.format == Format::Json {
        let _ = write_out(cli, &failure.to_json(name));
    }
    ExitCode::from(failure.exit_code())
}

use std::path::PathBuf;
use std::process::ExitCode;

use arity_cli::{run, Command, Manifest, EXIT_INPUT};
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

/// Run one check over JSON inputs and print a JSON report.
///
/// Exit status: 0 pass, 1 failed check (the report holds a witness), 2 input
/// or usage error.
#[derive(Debug, Parser)]
#[command(name = "arity", version)]
struct Args {
    /// One of: validate, nerve, segal, categorify, kan, density, factorize,
    /// zigzag, pd-compose, free2, store-normalize, store-canonical, theta,
    /// operad-validate, operad-iso, strongly-regular.
    command: Command,
    /// Input file; repeat for commands taking several.
    #[arg(long = "input", short = 'i')]
    inputs: Vec<PathBuf>,
    /// Size bound: path length, depth, step budget or arity, per command.
    #[arg(long)]
    bound: Option<usize>,
    /// Truncation level.
    #[arg(long)]
    trunc: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Format::Json = args.format;
    let manifest = Manifest { command: args.command, inputs: args.inputs, bound: args.bound, trunc: args.trunc, out: args.out };
    let outcome = run(&manifest);
    let text = outcome.render();
    let code = match &manifest.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("cannot write {}: {e}", path.display());
                EXIT_INPUT
            }
        },
        None => {
            print!("{text}");
            outcome.code
        }
    };
    ExitCode::from(code as u8)
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tightspace::cli::{run, Command, Overrides, Report};
use tightspace::repr::Variant;
use tightspace::Error;

/// Symbolic checks for C*-algebras of finite labelled spaces.
#[derive(Parser)]
#[command(name = "tightspace", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Graph document (JSON).
    file: PathBuf,
    /// Longest word enumerated.
    #[arg(long)]
    word_bound: Option<usize>,
    /// Longest lasso cycle enumerated.
    #[arg(long)]
    lasso_bound: Option<usize>,
    /// Path keys sampled for the path model.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for sampling and random elements.
    #[arg(long)]
    seed: Option<u64>,
    /// def31 or alt.
    #[arg(long)]
    variant: Option<Variant>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = args.file.display().to_string();
    let report = match fs::read_to_string(&args.file) {
        Ok(text) => run(
            args.command,
            &input,
            &text,
            Overrides {
                word_bound: args.word_bound,
                lasso_bound: args.lasso_bound,
                samples: args.samples,
                seed: args.seed,
                variant: args.variant,
            },
        ),
        Err(e) => Report::invalid(args.command, &input, None, &Error::Document(format!("cannot read {input}: {e}"))),
    };
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(report.exit_status as u8)
}

mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Certify, Cli, Command, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let run = match &cli.command {
        Command::Pell(a) => commands::pell(a),
        Command::Units(a) => commands::units(a),
        Command::Certify(Certify::Group(a)) => commands::certify_group(a),
        Command::Certify(Certify::Semigroup(a)) => commands::certify_semigroup(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Infeasibility(a) => commands::infeasibility(a.resolution),
    };
    let mut run = match run {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(2);
        }
    };
    run.doc.timing_ms = start.elapsed().as_millis() as u64;
    let body = match cli.format {
        Format::Text => run.text,
        Format::Json => report::to_canonical_json(&run.doc) + "\n",
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(run.code)
}

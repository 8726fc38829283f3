//! `algstop`: distribution queries, cluster partitioning, model fitting,
//! group reports and curve tables for stop-signal reaction times.
//!
//! Exit status is 0 on success, 1 when the input data or parameters are
//! rejected, and 2 for malformed command lines.

mod args;
mod data;
mod dist_cmd;
mod fit;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dist(d) => dist_cmd::run(d),
        Command::Partition(p) => data::partition(p),
        Command::Fit(f) => fit::run(f),
        Command::Report(r) => data::report(r),
        Command::Curves(c) => data::curves(c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! `inh`: command-line front end for the indoor propagation models.
//!
//! Exit codes: 0 success, 2 usage, 3 configuration, 4 degenerate design
//! or fit failure, 5 I/O.

// validators use `!(x > 0.0)` so that NaN fails the check too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;

use clap::Parser;
use inh_channel::error::Error;

use args::{Cli, Command};

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 2,
        Error::Config(_) => 3,
        Error::DegenerateDesign(_) | Error::FitFailure(_) => 4,
        Error::Io(_) => 5,
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => commands::cmd_eval(a),
        Command::Fit(a) => commands::cmd_fit(a),
        Command::CompareLos(a) => commands::cmd_compare_los(a),
        Command::Simulate(a) => commands::cmd_simulate(a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

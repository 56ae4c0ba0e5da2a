use std::process::ExitCode;

use bcs_liouvillian::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

use std::io;
use std::process::ExitCode;

use clap::Parser;

use archslice::cli::{run, Cli, CliConfig};

fn main() -> ExitCode {
    let config = CliConfig::from(Cli::parse());
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}

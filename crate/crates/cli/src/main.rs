// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use revpla_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    match run(&config) {
        Ok(outcome) => {
            if config.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if let Err(e) = stdout.write_all(outcome.output.as_bytes()) {
                    eprintln!("error: writing report: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "revpla",
    version,
    about = "Reversible PLA synthesis, verification and power-gating reports"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Include a generation timestamp in the report.
    #[arg(long, global = true)]
    pub timestamps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Active,
    Sleep,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Synthesize a PLA file and dump the netlist with its metrics.
    Synth { pla: PathBuf },

    /// Synthesize, then simulate a single input vector.
    Sim {
        pla: PathBuf,
        /// Input bits, first character is input line 1 (e.g. `101`).
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Active)]
        mode: ModeArg,
    },

    /// Exhaustive equivalence check plus reversibility audit.
    Check { pla: PathBuf },

    /// Leakage model and per-line power table.
    Power {
        #[arg(long)]
        params: PathBuf,
        /// Calibration file, or `table1` for the built-in reference readings.
        #[arg(long, default_value = "table1")]
        calib: String,
    },

    /// Everything above in one document.
    Report {
        pla: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "table1")]
        calib: String,
    },
}

// SPDX-License-Identifier: Apache-2.0

//! `revpla` command-line front end.
//!
//! Every subcommand builds one [`Document`] and renders it as text, json or
//! csv. Rendering is a pure function of the inputs, so identical inputs give
//! byte-identical output unless `--timestamps` is passed.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or format error.

pub mod args;
pub mod numfmt;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use revpla_core::power::{parse_calibration, parse_params, total_average_power, ParamSet};
use revpla_core::sim::Violation;
use revpla_core::{
    attach_sleep, audit_reversibility, leakage_report, parse_bits, parse_pla, power_table,
    synthesize, verify_equivalence, AuditReport, CalibrationTable, Counterexample, LeakageReport,
    NetlistMetrics, PlaSpec, PowerRow, RplaNetlist, SimMode, Simulator, SleepDomain,
};
use serde::Serialize;
use thiserror::Error;

pub use args::{Cli, Command, ModeArg, OutputArgs, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: revpla_core::Error,
    },
    #[error(transparent)]
    Core(#[from] revpla_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT_ERROR
    }
}

/// Everything a single invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub timestamps: bool,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            format: cli.output.format,
            out: cli.output.out,
            timestamps: cli.output.timestamps,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GateRow {
    pub index: usize,
    pub kind: String,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub plane: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NetlistSection {
    pub inputs: usize,
    pub outputs: usize,
    pub gates: usize,
    pub feynman: usize,
    pub mux: usize,
    pub and_plane_gates: usize,
    pub or_plane_gates: usize,
    pub quantum_cost: u64,
    pub garbage: usize,
    pub ancilla: usize,
    pub sleep_domains: Vec<SleepDomain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_list: Option<Vec<GateRow>>,
}

impl NetlistSection {
    fn new(nl: &RplaNetlist, with_gates: bool) -> Self {
        let m = NetlistMetrics::of(nl);
        NetlistSection {
            inputs: nl.num_inputs(),
            outputs: nl.num_outputs(),
            gates: m.gates,
            feynman: m.feynman,
            mux: m.mux,
            and_plane_gates: m.and_plane_gates,
            or_plane_gates: m.or_plane_gates,
            quantum_cost: m.quantum_cost,
            garbage: m.garbage,
            ancilla: m.ancilla,
            sleep_domains: nl.sleep_domains.clone(),
            gate_list: with_gates.then(|| {
                nl.gates
                    .iter()
                    .enumerate()
                    .map(|(index, g)| GateRow {
                        index,
                        kind: g.kind.to_string(),
                        inputs: g.inputs.iter().map(|w| w.0).collect(),
                        outputs: g.outputs.iter().map(|w| w.0).collect(),
                        plane: g.plane.to_string(),
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimSection {
    pub vector: String,
    pub mode: SimMode,
    pub outputs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceSection {
    pub pass: bool,
    pub vectors: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerSection {
    pub calibration: String,
    pub table: Vec<PowerRow>,
    /// Gated over ungated total with every line high.
    pub ratio: f64,
    pub saving: f64,
    pub line_ratios: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_figure: Option<String>,
    pub leakage: LeakageReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub average_power_w: Option<f64>,
}

/// The structured report shared by every output format.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Document {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub netlist: Option<NetlistSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerSection>,
}

impl Document {
    /// True if an equivalence check or audit ran and found a problem.
    pub fn verification_failed(&self) -> bool {
        self.equivalence.as_ref().is_some_and(|e| !e.pass)
            || self.audit.as_ref().is_some_and(|a| !a.is_clean())
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Text => Ok(render::text(self)),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self)
                    .map_err(|e| CliError::Usage(format!("json encoding failed: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => render::csv(self),
        }
    }
}

/// Result of one invocation: the rendered report and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_pla(path: &Path) -> Result<PlaSpec, CliError> {
    parse_pla(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_params(path: &Path) -> Result<ParamSet, CliError> {
    parse_params(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_calibration(arg: &str) -> Result<CalibrationTable, CliError> {
    if arg == "table1" {
        return Ok(CalibrationTable::table1());
    }
    let path = Path::new(arg);
    parse_calibration(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn gated_netlist(spec: &PlaSpec) -> Result<RplaNetlist, CliError> {
    Ok(attach_sleep(synthesize(spec)?)?)
}

fn verification(
    nl: &RplaNetlist,
    spec: &PlaSpec,
) -> Result<(EquivalenceSection, AuditReport), CliError> {
    let eq = verify_equivalence(nl, spec)?;
    Ok((
        EquivalenceSection {
            pass: eq.pass,
            vectors: eq.vectors,
            counterexamples: eq.counterexamples,
        },
        audit_reversibility(nl),
    ))
}

fn power_section(params: &ParamSet, calib: &CalibrationTable) -> Result<PowerSection, CliError> {
    let table = power_table(calib.lines(), calib)?;
    let leakage = leakage_report(&params.device)?;
    let average_power_w = params
        .activity
        .as_ref()
        .map(|a| total_average_power(a, params.device.vdd))
        .transpose()?;
    Ok(PowerSection {
        calibration: table.calibration,
        table: table.rows,
        ratio: table.consumption_ratio,
        saving: table.saving,
        line_ratios: table.line_ratios,
        reference_figure: table.reference_figure,
        leakage,
        average_power_w,
    })
}

/// Builds the report for `command` without rendering it.
pub fn build_document(command: &Command) -> Result<Document, CliError> {
    let mut doc = Document::default();
    match command {
        Command::Synth { pla } => {
            let nl = gated_netlist(&load_pla(pla)?)?;
            doc.netlist = Some(NetlistSection::new(&nl, true));
        }
        Command::Sim { pla, vector, mode } => {
            let spec = load_pla(pla)?;
            let nl = gated_netlist(&spec)?;
            let bits = parse_bits(vector)?;
            if bits.len() != spec.num_inputs() {
                return Err(CliError::Usage(format!(
                    "--vector has {} bits but {} declares {} inputs",
                    bits.len(),
                    pla.display(),
                    spec.num_inputs()
                )));
            }
            let mode = match mode {
                ModeArg::Active => SimMode::Active,
                ModeArg::Sleep => SimMode::Sleep,
            };
            let out = Simulator::new(&nl)?.run(&bits, mode)?;
            doc.netlist = Some(NetlistSection::new(&nl, false));
            doc.simulation = Some(SimSection {
                vector: vector.clone(),
                mode,
                outputs: out.iter().map(|v| v.as_char()).collect(),
            });
        }
        Command::Check { pla } => {
            let spec = load_pla(pla)?;
            let nl = gated_netlist(&spec)?;
            let (eq, audit) = verification(&nl, &spec)?;
            doc.netlist = Some(NetlistSection::new(&nl, false));
            doc.equivalence = Some(eq);
            doc.audit = Some(audit);
        }
        Command::Power { params, calib } => {
            let params = load_params(params)?;
            let calib = load_calibration(calib)?;
            doc.power = Some(power_section(&params, &calib)?);
        }
        Command::Report { pla, params, calib } => {
            let spec = load_pla(pla)?;
            let params = load_params(params)?;
            let calib = load_calibration(calib)?;
            if calib.lines() != spec.num_inputs() {
                return Err(CliError::Usage(format!(
                    "calibration '{}' covers {} input lines but {} has {}",
                    calib.name,
                    calib.lines(),
                    pla.display(),
                    spec.num_inputs()
                )));
            }
            let nl = gated_netlist(&spec)?;
            let (eq, audit) = verification(&nl, &spec)?;
            doc.netlist = Some(NetlistSection::new(&nl, true));
            doc.equivalence = Some(eq);
            doc.audit = Some(audit);
            doc.power = Some(power_section(&params, &calib)?);
        }
    }
    Ok(doc)
}

/// Runs one invocation and renders its report. Writing to `--out` happens
/// here; printing to standard output is left to the caller.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut doc = build_document(&config.command)?;
    if config.timestamps {
        doc.generated_unix = Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        );
    }
    let output = doc.render(config.format)?;
    if let Some(path) = &config.out {
        fs::write(path, &output).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(Outcome {
        exit_code: if doc.verification_failed() {
            EXIT_VERIFY_FAILED
        } else {
            EXIT_OK
        },
        output,
    })
}

pub(crate) fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::NonBijective { gate, gate_kind } => {
            format!("gate {gate}: {gate_kind} is not bijective")
        }
        Violation::Arity {
            gate,
            gate_kind,
            inputs,
            outputs,
        } => format!("gate {gate}: {gate_kind} with {inputs} inputs and {outputs} outputs"),
        Violation::UnknownWire { gate, wire } => format!("gate {gate}: unknown wire {wire}"),
        Violation::Driver { wire, drivers } => {
            format!("wire {wire}: inconsistent drivers {drivers:?}")
        }
        Violation::Fanout { wire, sinks } => format!("wire {wire}: fans out to {sinks} sinks"),
        Violation::Dangling { wire } => format!("wire {wire}: dangling gate output"),
        Violation::OutputIsGarbage { wire } => {
            format!("wire {wire}: both primary output and garbage")
        }
        Violation::Cycle { gates } => format!("gates {gates:?}: combinational cycle"),
    }
}

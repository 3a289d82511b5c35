// SPDX-License-Identifier: Apache-2.0

//! Reversible programmable logic arrays built from Feynman and MUX gates.
//!
//! The crate covers the whole flow: parse a PLA description
//! ([`plaspec`]), synthesize a full-decode AND plane and an OR plane
//! ([`synth`]), simulate and audit the result ([`sim`]), and evaluate the
//! footer power-gating model attached to each plane ([`power`]).

pub mod error;
pub mod gates;
pub mod netlist;
pub mod plaspec;
pub mod power;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
pub use gates::{
    check_bijective, eval_feynman, eval_mux, quantum_cost, truth_table, Bit, GateKind, TruthTable,
};
pub use netlist::{
    GateInstance, Plane, PowerState, RplaNetlist, SleepDomain, SwitchKind, WireId, WireOrigin,
};
pub use plaspec::{eval_spec, minterm_set, parse_bits, parse_pla, Cube, PlaSpec, MAX_INPUTS};
pub use power::{
    balance_point, leakage_balance_residual, leakage_report, parse_calibration, parse_params,
    power_table, sleep_active_ratio, subthreshold_current, total_average_power, virtual_ground,
    ActivityParams, CalibrationTable, DeviceParams, LeakageReport, ParamSet, PowerReport, PowerRow,
};
pub use sim::{
    audit_reversibility, simulate, verify_equivalence, AuditReport, Counterexample,
    EquivalenceReport, SimMode, SimValue, Simulator, Violation,
};
pub use synth::{attach_sleep, build_and_plane, build_or_plane, synthesize, NetlistMetrics};

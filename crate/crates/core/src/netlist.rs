// SPDX-License-Identifier: Apache-2.0

//! Wire-level netlist for a reversible PLA.
//!
//! Every wire has exactly one origin, recorded in [`RplaNetlist::wires`].
//! Reversible circuits forbid implicit fan-out, so a wire is consumed by at
//! most one gate input; copies are made with explicit Feynman gates.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::gates::{Bit, GateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WireId(pub usize);

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WireOrigin {
    PrimaryInput(usize),
    Constant(Bit),
    GateOutput { gate: usize, port: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    And,
    Or,
}

impl Plane {
    pub const ALL: [Plane; 2] = [Plane::And, Plane::Or];

    pub fn tag(self) -> &'static str {
        match self {
            Plane::And => "and",
            Plane::Or => "or",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateInstance {
    pub kind: GateKind,
    pub inputs: Vec<WireId>,
    pub outputs: Vec<WireId>,
    pub plane: Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchKind {
    /// NMOS sleep transistor between the plane and ground.
    Footer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerState {
    Active,
    Sleep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SleepDomain {
    pub plane: Plane,
    pub switch_kind: SwitchKind,
    pub state: PowerState,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RplaNetlist {
    /// Origin of each wire, indexed by `WireId`.
    pub wires: Vec<WireOrigin>,
    /// Gates in evaluation order.
    pub gates: Vec<GateInstance>,
    pub primary_inputs: Vec<WireId>,
    pub primary_outputs: Vec<WireId>,
    /// Plane that drives each primary output; parallel to `primary_outputs`.
    pub output_planes: Vec<Plane>,
    pub minterm_wires: Vec<WireId>,
    pub garbage_wires: Vec<WireId>,
    pub constant_inputs: Vec<(WireId, Bit)>,
    pub sleep_domains: Vec<SleepDomain>,
}

impl RplaNetlist {
    pub fn num_inputs(&self) -> usize {
        self.primary_inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.primary_outputs.len()
    }

    pub fn add_wire(&mut self, origin: WireOrigin) -> WireId {
        self.wires.push(origin);
        WireId(self.wires.len() - 1)
    }

    pub fn add_constant(&mut self, value: Bit) -> WireId {
        let w = self.add_wire(WireOrigin::Constant(value));
        self.constant_inputs.push((w, value));
        w
    }

    /// Appends a gate, allocating fresh output wires for it.
    pub fn add_gate(&mut self, kind: GateKind, inputs: Vec<WireId>, plane: Plane) -> &[WireId] {
        debug_assert_eq!(inputs.len(), kind.arity());
        let gate = self.gates.len();
        let outputs = (0..kind.arity())
            .map(|port| self.add_wire(WireOrigin::GateOutput { gate, port }))
            .collect();
        self.gates.push(GateInstance {
            kind,
            inputs,
            outputs,
            plane,
        });
        &self.gates[gate].outputs
    }

    pub fn gate_count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn domain(&self, plane: Plane) -> Option<&SleepDomain> {
        self.sleep_domains.iter().find(|d| d.plane == plane)
    }

    /// Sets the state of a plane's sleep domain. Returns `false` if the
    /// netlist carries no domain for that plane.
    pub fn set_domain_state(&mut self, plane: Plane, state: PowerState) -> bool {
        match self.sleep_domains.iter_mut().find(|d| d.plane == plane) {
            Some(d) => {
                d.state = state;
                true
            }
            None => false,
        }
    }

    /// Line-oriented dump: one gate per line as
    /// `<index> <kind> <in,ids> <out,ids> <plane>`.
    pub fn dump(&self) -> String {
        let ids = |ws: &[WireId]| {
            ws.iter()
                .map(|w| w.0.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        let _ = writeln!(s, "# inputs {}", ids(&self.primary_inputs));
        let _ = writeln!(s, "# outputs {}", ids(&self.primary_outputs));
        for (w, v) in &self.constant_inputs {
            let _ = writeln!(s, "# const {} {}", w.0, v);
        }
        for (i, g) in self.gates.iter().enumerate() {
            let _ = writeln!(
                s,
                "{} {} {} {} {}",
                i,
                g.kind,
                ids(&g.inputs),
                ids(&g.outputs),
                g.plane
            );
        }
        let _ = writeln!(s, "# garbage {}", ids(&self.garbage_wires));
        s
    }
}

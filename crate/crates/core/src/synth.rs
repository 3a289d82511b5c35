// SPDX-License-Identifier: Apache-2.0

//! Full-decode reversible PLA synthesis.
//!
//! The AND plane decodes all `2^n` minterms of the inputs:
//!
//! 1. each input `x` enters a Feynman gate with `B = 1`, giving `x` on `P`
//!    and `!x` on `Q`;
//! 2. each of the `2n` literals is fanned out to the `2^(n-1)` minterms that
//!    use it through a linear chain of Feynman copy gates (`B = 0`);
//! 3. each minterm is a left-to-right chain of `n - 1` MUX gates in AND
//!    configuration, `MUX(A = literal, B = partial, C = 0)`.
//!
//! The OR plane copies each minterm once per output that uses it, then ORs
//! the copies with `MUX(A = partial, B = 1, C = minterm)` chains. An output
//! with no minterms is tied to a constant-0 ancilla.
//!
//! Every gate output that is not a primary output or consumed later is
//! garbage. No uncomputation is attempted.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{quantum_cost, Bit, GateKind};
use crate::netlist::{Plane, PowerState, RplaNetlist, SleepDomain, SwitchKind, WireId, WireOrigin};
use crate::plaspec::{minterm_set, PlaSpec, MAX_INPUTS};

/// Summary figures for a synthesized netlist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetlistMetrics {
    pub gates: usize,
    pub feynman: usize,
    pub mux: usize,
    pub and_plane_gates: usize,
    pub or_plane_gates: usize,
    pub quantum_cost: u64,
    pub garbage: usize,
    pub ancilla: usize,
}

impl NetlistMetrics {
    pub fn of(netlist: &RplaNetlist) -> Self {
        let on_plane = |p| netlist.gates.iter().filter(|g| g.plane == p).count();
        NetlistMetrics {
            gates: netlist.gates.len(),
            feynman: netlist.gate_count(GateKind::Feynman),
            mux: netlist.gate_count(GateKind::Mux),
            and_plane_gates: on_plane(Plane::And),
            or_plane_gates: on_plane(Plane::Or),
            quantum_cost: quantum_cost(netlist),
            garbage: netlist.garbage_wires.len(),
            ancilla: netlist.constant_inputs.len(),
        }
    }
}

/// Supplies `count` copies of `wire` through a linear Feynman copy chain.
///
/// `count == 0` leaves the wire untouched and returns nothing; the caller
/// is expected to mark it as garbage.
fn fan_out(nl: &mut RplaNetlist, wire: WireId, count: usize, plane: Plane) -> Vec<WireId> {
    let mut copies = Vec::with_capacity(count);
    if count == 0 {
        return copies;
    }
    let mut carry = wire;
    for _ in 1..count {
        let zero = nl.add_constant(Bit::Zero);
        let outs = nl.add_gate(GateKind::Feynman, vec![carry, zero], plane);
        copies.push(outs[0]);
        carry = outs[1];
    }
    copies.push(carry);
    copies
}

/// Decodes the first `n` primary inputs of `nl` into `2^n` minterm wires.
fn and_plane_into(nl: &mut RplaNetlist, inputs: &[WireId]) -> Vec<WireId> {
    let n = inputs.len();
    let k = 1usize << n;

    // literal[i][0] = !x_i, literal[i][1] = x_i
    let mut literals = Vec::with_capacity(n);
    for &x in inputs {
        let one = nl.add_constant(Bit::One);
        let outs = nl.add_gate(GateKind::Feynman, vec![x, one], Plane::And);
        literals.push([outs[1], outs[0]]);
    }

    // copies[i][polarity] is consumed front to back in minterm order
    let half = k / 2;
    let mut copies: Vec<[std::vec::IntoIter<WireId>; 2]> = literals
        .iter()
        .map(|[neg, pos]| {
            [
                fan_out(nl, *neg, half, Plane::And).into_iter(),
                fan_out(nl, *pos, half, Plane::And).into_iter(),
            ]
        })
        .collect();

    let mut minterms = Vec::with_capacity(k);
    for m in 0..k {
        let mut lit = |i: usize| {
            let polarity = (m >> (n - 1 - i)) & 1;
            copies[i][polarity]
                .next()
                .expect("each literal has one copy per minterm using it")
        };
        let mut partial = lit(0);
        for i in 1..n {
            let zero = nl.add_constant(Bit::Zero);
            let l = lit(i);
            partial = nl.add_gate(GateKind::Mux, vec![l, partial, zero], Plane::And)[2];
        }
        minterms.push(partial);
    }
    minterms
}

/// Builds one OR chain per output over `minterms`. Returns the output wires
/// and the minterm wires nobody consumed.
fn or_plane_into(
    nl: &mut RplaNetlist,
    minterms: &[WireId],
    sets: &[BTreeSet<usize>],
) -> (Vec<WireId>, Vec<WireId>) {
    let mut uses = vec![0usize; minterms.len()];
    for set in sets {
        for &m in set {
            uses[m] += 1;
        }
    }

    let mut unused = Vec::new();
    let mut copies: Vec<std::vec::IntoIter<WireId>> = Vec::with_capacity(minterms.len());
    for (m, &w) in minterms.iter().enumerate() {
        if uses[m] == 0 {
            unused.push(w);
        }
        copies.push(fan_out(nl, w, uses[m], Plane::Or).into_iter());
    }

    let mut outputs = Vec::with_capacity(sets.len());
    for set in sets {
        let mut terms = set.iter().map(|&m| {
            copies[m]
                .next()
                .expect("each minterm has one copy per output using it")
        });
        let out = match terms.next() {
            None => nl.add_constant(Bit::Zero),
            Some(first) => {
                let mut partial = first;
                for t in terms {
                    let one = nl.add_constant(Bit::One);
                    partial = nl.add_gate(GateKind::Mux, vec![partial, one, t], Plane::Or)[2];
                }
                partial
            }
        };
        outputs.push(out);
    }
    (outputs, unused)
}

/// Marks every gate output that is neither consumed nor a primary output
/// as garbage, in wire order.
fn collect_garbage(nl: &mut RplaNetlist, extra: &[WireId]) {
    let mut consumed = vec![false; nl.wires.len()];
    for g in &nl.gates {
        for w in &g.inputs {
            consumed[w.0] = true;
        }
    }
    for w in &nl.primary_outputs {
        consumed[w.0] = true;
    }
    let mut garbage: Vec<WireId> = nl
        .wires
        .iter()
        .enumerate()
        .filter(|(i, o)| matches!(o, WireOrigin::GateOutput { .. }) && !consumed[*i])
        .map(|(i, _)| WireId(i))
        .collect();
    for w in extra {
        if !consumed[w.0] && !garbage.contains(w) {
            garbage.push(*w);
        }
    }
    garbage.sort();
    nl.garbage_wires = garbage;
}

fn check_input_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_INPUTS {
        return Err(Error::usage(format!(
            "input count {n} outside 1..={MAX_INPUTS}"
        )));
    }
    Ok(())
}

fn new_with_inputs(count: usize) -> (RplaNetlist, Vec<WireId>) {
    let mut nl = RplaNetlist::default();
    let inputs: Vec<WireId> = (0..count)
        .map(|i| nl.add_wire(WireOrigin::PrimaryInput(i)))
        .collect();
    nl.primary_inputs = inputs.clone();
    (nl, inputs)
}

/// Standalone AND plane for `n` inputs.
///
/// The minterm wires double as the fragment's primary outputs so the decode
/// can be simulated directly: output `i` is 1 iff the input word equals `i`.
pub fn build_and_plane(n: usize) -> Result<RplaNetlist> {
    check_input_count(n)?;
    let (mut nl, inputs) = new_with_inputs(n);
    let minterms = and_plane_into(&mut nl, &inputs);
    nl.primary_outputs = minterms.clone();
    nl.output_planes = vec![Plane::And; minterms.len()];
    nl.minterm_wires = minterms;
    collect_garbage(&mut nl, &[]);
    Ok(nl)
}

/// Standalone OR plane over the `2^n` minterm lines of an `n`-input decode.
///
/// The fragment's primary inputs are the minterm lines themselves, in
/// minterm order; one primary output per set.
pub fn build_or_plane(n: usize, minterm_sets: &[BTreeSet<usize>]) -> Result<RplaNetlist> {
    check_input_count(n)?;
    let k = 1usize << n;
    check_sets(k, minterm_sets)?;
    let (mut nl, lines) = new_with_inputs(k);
    nl.minterm_wires = lines.clone();
    let (outputs, _unused) = or_plane_into(&mut nl, &lines, minterm_sets);
    nl.output_planes = vec![Plane::Or; outputs.len()];
    nl.primary_outputs = outputs;
    collect_garbage(&mut nl, &[]);
    Ok(nl)
}

fn check_sets(k: usize, sets: &[BTreeSet<usize>]) -> Result<()> {
    for (j, set) in sets.iter().enumerate() {
        if let Some(&bad) = set.iter().find(|&&m| m >= k) {
            return Err(Error::usage(format!(
                "output {j}: minterm {bad} out of range for {k} product terms"
            )));
        }
    }
    Ok(())
}

/// AND plane followed by OR plane, without sleep domains.
pub fn synthesize(spec: &PlaSpec) -> Result<RplaNetlist> {
    let n = spec.num_inputs();
    check_input_count(n)?;
    let sets = (0..spec.num_outputs())
        .map(|j| minterm_set(spec, j).map(|s| s.into_iter().map(|m| m as usize).collect()))
        .collect::<Result<Vec<BTreeSet<usize>>>>()?;
    check_sets(1 << n, &sets)?;

    let (mut nl, inputs) = new_with_inputs(n);
    let minterms = and_plane_into(&mut nl, &inputs);
    let (outputs, unused) = or_plane_into(&mut nl, &minterms, &sets);
    nl.minterm_wires = minterms;
    nl.output_planes = vec![Plane::Or; outputs.len()];
    nl.primary_outputs = outputs;
    collect_garbage(&mut nl, &unused);
    Ok(nl)
}

/// Adds one footer sleep domain per plane, both initially active.
pub fn attach_sleep(mut netlist: RplaNetlist) -> Result<RplaNetlist> {
    if !netlist.sleep_domains.is_empty() {
        return Err(Error::usage("netlist already has sleep domains"));
    }
    netlist.sleep_domains = Plane::ALL
        .iter()
        .map(|&plane| SleepDomain {
            plane,
            switch_kind: SwitchKind::Footer,
            state: PowerState::Active,
        })
        .collect();
    Ok(netlist)
}

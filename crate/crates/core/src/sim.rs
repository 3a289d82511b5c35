// SPDX-License-Identifier: Apache-2.0

//! Levelized simulation, exhaustive equivalence checking and structural
//! audits for [`RplaNetlist`].

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{check_bijective, truth_table, word_to_bits, Bit, GateKind};
use crate::netlist::{Plane, PowerState, RplaNetlist, WireOrigin};
use crate::plaspec::{PlaSpec, MAX_INPUTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimMode {
    Active,
    Sleep,
}

impl SimMode {
    fn state(self) -> PowerState {
        match self {
            SimMode::Active => PowerState::Active,
            SimMode::Sleep => PowerState::Sleep,
        }
    }
}

/// A simulated logic value. `Undefined` marks a node whose plane has its
/// footer switched off, so its ground floats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimValue {
    Zero,
    One,
    Undefined,
}

impl SimValue {
    pub fn as_bit(self) -> Option<Bit> {
        match self {
            SimValue::Zero => Some(Bit::Zero),
            SimValue::One => Some(Bit::One),
            SimValue::Undefined => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            SimValue::Zero => '0',
            SimValue::One => '1',
            SimValue::Undefined => 'X',
        }
    }
}

impl From<Bit> for SimValue {
    fn from(b: Bit) -> Self {
        match b {
            Bit::Zero => SimValue::Zero,
            Bit::One => SimValue::One,
        }
    }
}

impl fmt::Display for SimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Topological order of `nl.gates`, or the indices of gates that could not
/// be ordered (they sit on or behind a cycle, or read an undriven wire).
fn levelize(nl: &RplaNetlist) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let nwires = nl.wires.len();
    let mut driver: Vec<Option<usize>> = vec![None; nwires];
    for (gi, g) in nl.gates.iter().enumerate() {
        for w in &g.outputs {
            if w.0 < nwires {
                driver[w.0] = Some(gi);
            }
        }
    }
    let mut pending = vec![0usize; nl.gates.len()];
    let mut fanout: Vec<Vec<usize>> = vec![Vec::new(); nl.gates.len()];
    let mut blocked = vec![false; nl.gates.len()];
    for (gi, g) in nl.gates.iter().enumerate() {
        for w in &g.inputs {
            match nl.wires.get(w.0) {
                None => blocked[gi] = true,
                Some(WireOrigin::GateOutput { .. }) => match driver[w.0] {
                    Some(d) => {
                        pending[gi] += 1;
                        fanout[d].push(gi);
                    }
                    None => blocked[gi] = true,
                },
                Some(_) => {}
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..nl.gates.len())
        .filter(|&g| pending[g] == 0 && !blocked[g])
        .collect();
    let mut order = Vec::with_capacity(nl.gates.len());
    while let Some(g) = queue.pop_front() {
        order.push(g);
        for &h in &fanout[g] {
            pending[h] -= 1;
            if pending[h] == 0 && !blocked[h] {
                queue.push_back(h);
            }
        }
    }
    if order.len() == nl.gates.len() {
        Ok(order)
    } else {
        let mut placed = vec![false; nl.gates.len()];
        for &g in &order {
            placed[g] = true;
        }
        Err((0..nl.gates.len()).filter(|&g| !placed[g]).collect())
    }
}

/// A netlist prepared for repeated evaluation. The gate order is computed
/// once here and reused for every input vector.
pub struct Simulator<'a> {
    netlist: &'a RplaNetlist,
    order: Vec<usize>,
}

impl<'a> Simulator<'a> {
    pub fn new(netlist: &'a RplaNetlist) -> Result<Self> {
        for (gi, g) in netlist.gates.iter().enumerate() {
            let arity = g.kind.arity();
            if g.inputs.len() != arity || g.outputs.len() != arity {
                return Err(Error::Netlist(format!("gate {gi} has wrong arity")));
            }
            if let Some(w) = g.outputs.iter().find(|w| w.0 >= netlist.wires.len()) {
                return Err(Error::Netlist(format!("gate {gi} drives unknown wire {w}")));
            }
        }
        let order = levelize(netlist).map_err(|stuck| {
            Error::Netlist(format!(
                "gates {stuck:?} cannot be ordered (cycle or undriven input)"
            ))
        })?;
        Ok(Simulator { netlist, order })
    }

    pub fn netlist(&self) -> &RplaNetlist {
        self.netlist
    }

    /// Evaluates with both planes in `mode`, regardless of the netlist's
    /// own domain states.
    pub fn run(&self, input: &[Bit], mode: SimMode) -> Result<Vec<SimValue>> {
        let state = mode.state();
        self.run_planes(input, state, state)
    }

    /// Evaluates with the AND and OR planes in independent states.
    pub fn run_planes(
        &self,
        input: &[Bit],
        and_plane: PowerState,
        or_plane: PowerState,
    ) -> Result<Vec<SimValue>> {
        self.eval(input, |p| match p {
            Plane::And => and_plane == PowerState::Sleep,
            Plane::Or => or_plane == PowerState::Sleep,
        })
    }

    /// Evaluates using the states stored in the netlist's sleep domains. A
    /// plane without a domain has no footer and is always powered.
    pub fn run_domains(&self, input: &[Bit]) -> Result<Vec<SimValue>> {
        let nl = self.netlist;
        self.eval(input, |p| {
            nl.domain(p).is_some_and(|d| d.state == PowerState::Sleep)
        })
    }

    fn eval(&self, input: &[Bit], asleep: impl Fn(Plane) -> bool) -> Result<Vec<SimValue>> {
        let nl = self.netlist;
        if input.len() != nl.primary_inputs.len() {
            return Err(Error::usage(format!(
                "input has {} bits, netlist has {} inputs",
                input.len(),
                nl.primary_inputs.len()
            )));
        }
        let mut values: Vec<Option<SimValue>> = nl
            .wires
            .iter()
            .map(|o| match o {
                WireOrigin::Constant(b) => Some(SimValue::from(*b)),
                _ => None,
            })
            .collect();
        for (w, b) in nl.primary_inputs.iter().zip(input) {
            values[w.0] = Some(SimValue::from(*b));
        }

        let mut bits = Vec::with_capacity(3);
        for &gi in &self.order {
            let g = &nl.gates[gi];
            bits.clear();
            let mut defined = !asleep(g.plane);
            for w in &g.inputs {
                match values[w.0] {
                    Some(v) => match v.as_bit() {
                        Some(b) => bits.push(b),
                        None => defined = false,
                    },
                    None => {
                        return Err(Error::Netlist(format!(
                            "gate {gi} reads wire {w} before it is driven"
                        )))
                    }
                }
            }
            if defined {
                for (w, b) in g.outputs.iter().zip(g.kind.eval(&bits)) {
                    values[w.0] = Some(SimValue::from(b));
                }
            } else {
                for w in &g.outputs {
                    values[w.0] = Some(SimValue::Undefined);
                }
            }
        }

        nl.primary_outputs
            .iter()
            .enumerate()
            .map(|(j, w)| {
                let v = values
                    .get(w.0)
                    .copied()
                    .flatten()
                    .ok_or_else(|| Error::Netlist(format!("output {j} ({w}) is undriven")))?;
                let plane_asleep = nl.output_planes.get(j).is_some_and(|&p| asleep(p));
                Ok(if plane_asleep { SimValue::Undefined } else { v })
            })
            .collect()
    }
}

/// One-shot simulation. Use [`Simulator`] directly when evaluating many
/// vectors on the same netlist.
pub fn simulate(netlist: &RplaNetlist, input: &[Bit], mode: SimMode) -> Result<Vec<SimValue>> {
    Simulator::new(netlist)?.run(input, mode)
}

fn bits_string(bits: impl IntoIterator<Item = char>) -> String {
    bits.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub pass: bool,
    pub vectors: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Compares the netlist against the reference evaluator on all `2^n` words
/// in active mode. Vectors are split across worker threads; the counter-
/// example list is always in ascending input order.
pub fn verify_equivalence(netlist: &RplaNetlist, spec: &PlaSpec) -> Result<EquivalenceReport> {
    let n = spec.num_inputs();
    if netlist.num_inputs() != n || netlist.num_outputs() != spec.num_outputs() {
        return Err(Error::usage(format!(
            "netlist is {}x{} but spec is {}x{}",
            netlist.num_inputs(),
            netlist.num_outputs(),
            n,
            spec.num_outputs()
        )));
    }
    if n > MAX_INPUTS {
        return Err(Error::usage(format!("{n} inputs exceeds {MAX_INPUTS}")));
    }
    let sim = Simulator::new(netlist)?;
    let results = (0..1u32 << n)
        .into_par_iter()
        .map(|w| {
            let input = word_to_bits(w, n);
            let expected = spec.eval_word(w)?;
            let got = sim.run(&input, SimMode::Active)?;
            let same = expected
                .iter()
                .zip(&got)
                .all(|(e, g)| SimValue::from(*e) == *g);
            Ok((!same).then(|| Counterexample {
                input: bits_string(input.iter().map(|b| b.as_char())),
                expected: bits_string(expected.iter().map(|b| b.as_char())),
                got: bits_string(got.iter().map(|v| v.as_char())),
            }))
        })
        .collect::<Result<Vec<Option<Counterexample>>>>()?;
    let counterexamples: Vec<Counterexample> = results.into_iter().flatten().collect();
    Ok(EquivalenceReport {
        pass: counterexamples.is_empty(),
        vectors: 1u64 << n,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// (a) the gate kind does not realize a permutation.
    NonBijective { gate: usize, gate_kind: GateKind },
    /// (b) input and output counts differ from each other or from the kind.
    Arity {
        gate: usize,
        gate_kind: GateKind,
        inputs: usize,
        outputs: usize,
    },
    /// A gate references a wire id that does not exist.
    UnknownWire { gate: usize, wire: usize },
    /// (c) the wire's recorded origin and the gates listing it as an output
    /// disagree, or several gates drive it.
    Driver { wire: usize, drivers: Vec<usize> },
    /// (c) the wire feeds more than one sink (gate inputs or primary outputs).
    Fanout { wire: usize, sinks: usize },
    /// A gate output that is not consumed, not a primary output and not
    /// declared garbage.
    Dangling { wire: usize },
    /// A wire declared both primary output and garbage.
    OutputIsGarbage { wire: usize },
    /// (d) gates that cannot be topologically ordered.
    Cycle { gates: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub gates: usize,
    pub wires: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn audit_reversibility(netlist: &RplaNetlist) -> AuditReport {
    let nl = netlist;
    let nwires = nl.wires.len();
    let mut violations = Vec::new();

    let bijective: Vec<(GateKind, bool)> = GateKind::ALL
        .iter()
        .map(|&k| (k, check_bijective(&truth_table(k))))
        .collect();

    let mut drivers: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nwires];
    let mut sinks = vec![0usize; nwires];
    for (gi, g) in nl.gates.iter().enumerate() {
        if bijective.iter().any(|&(k, ok)| k == g.kind && !ok) {
            violations.push(Violation::NonBijective {
                gate: gi,
                gate_kind: g.kind,
            });
        }
        let arity = g.kind.arity();
        if g.inputs.len() != arity || g.outputs.len() != arity {
            violations.push(Violation::Arity {
                gate: gi,
                gate_kind: g.kind,
                inputs: g.inputs.len(),
                outputs: g.outputs.len(),
            });
        }
        for w in g.inputs.iter().chain(&g.outputs) {
            if w.0 >= nwires {
                violations.push(Violation::UnknownWire {
                    gate: gi,
                    wire: w.0,
                });
            }
        }
        for w in g.inputs.iter().filter(|w| w.0 < nwires) {
            sinks[w.0] += 1;
        }
        for (port, w) in g.outputs.iter().enumerate().filter(|(_, w)| w.0 < nwires) {
            drivers[w.0].push((gi, port));
        }
    }
    for w in nl.primary_outputs.iter().filter(|w| w.0 < nwires) {
        sinks[w.0] += 1;
    }

    for (wi, origin) in nl.wires.iter().enumerate() {
        let ds = &drivers[wi];
        let consistent = match origin {
            WireOrigin::PrimaryInput(_) | WireOrigin::Constant(_) => ds.is_empty(),
            WireOrigin::GateOutput { gate, port } => ds.as_slice() == [(*gate, *port)],
        };
        if !consistent {
            violations.push(Violation::Driver {
                wire: wi,
                drivers: ds.iter().map(|&(g, _)| g).collect(),
            });
        }
        if sinks[wi] > 1 {
            violations.push(Violation::Fanout {
                wire: wi,
                sinks: sinks[wi],
            });
        }
    }

    let mut garbage = vec![false; nwires];
    for w in nl.garbage_wires.iter().filter(|w| w.0 < nwires) {
        garbage[w.0] = true;
    }
    for w in nl.primary_outputs.iter().filter(|w| w.0 < nwires) {
        if garbage[w.0] {
            violations.push(Violation::OutputIsGarbage { wire: w.0 });
        }
    }
    for (wi, origin) in nl.wires.iter().enumerate() {
        if matches!(origin, WireOrigin::GateOutput { .. }) && sinks[wi] == 0 && !garbage[wi] {
            violations.push(Violation::Dangling { wire: wi });
        }
    }

    if let Err(gates) = levelize(nl) {
        violations.push(Violation::Cycle { gates });
    }

    AuditReport {
        gates: nl.gates.len(),
        wires: nwires,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{GateInstance, WireId};
    use crate::plaspec::parse_pla;
    use crate::synth::{attach_sleep, synthesize};
    use Bit::{One, Zero};

    fn single_gate(kind: GateKind) -> RplaNetlist {
        let mut nl = RplaNetlist::default();
        let ins: Vec<WireId> = (0..kind.arity())
            .map(|i| nl.add_wire(WireOrigin::PrimaryInput(i)))
            .collect();
        nl.primary_inputs = ins.clone();
        let outs = nl.add_gate(kind, ins, Plane::And).to_vec();
        nl.output_planes = vec![Plane::And; outs.len()];
        nl.primary_outputs = outs;
        nl
    }

    #[test]
    fn single_gate_matches_eval() {
        for kind in GateKind::ALL {
            let nl = single_gate(kind);
            let sim = Simulator::new(&nl).unwrap();
            for w in 0..1u32 << kind.arity() {
                let bits = word_to_bits(w, kind.arity());
                let want: Vec<SimValue> =
                    kind.eval(&bits).into_iter().map(SimValue::from).collect();
                assert_eq!(sim.run(&bits, SimMode::Active).unwrap(), want);
            }
        }
    }

    fn xor_netlist() -> RplaNetlist {
        synthesize(&parse_pla(".i 2\n.o 1\n01 1\n10 1\n.e").unwrap()).unwrap()
    }

    #[test]
    fn xor_active_and_sleep() {
        let nl = xor_netlist();
        assert_eq!(
            simulate(&nl, &[One, Zero], SimMode::Active).unwrap(),
            vec![SimValue::One]
        );
        assert_eq!(
            simulate(&nl, &[One, Zero], SimMode::Sleep).unwrap(),
            vec![SimValue::Undefined]
        );
    }

    #[test]
    fn full_adder_111() {
        let fa =
            parse_pla(".i 3\n.o 2\n001 10\n010 10\n100 10\n111 11\n-11 01\n1-1 01\n11- 01\n.e")
                .unwrap();
        let nl = synthesize(&fa).unwrap();
        assert_eq!(
            simulate(&nl, &[One, One, One], SimMode::Active).unwrap(),
            vec![SimValue::One, SimValue::One]
        );
    }

    #[test]
    fn width_mismatch() {
        assert!(matches!(
            simulate(&xor_netlist(), &[One], SimMode::Active),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn per_plane_sleep() {
        let spec = parse_pla(".i 2\n.o 2\n11 10\n.e").unwrap();
        let nl = synthesize(&spec).unwrap();
        let sim = Simulator::new(&nl).unwrap();
        let and_asleep = sim
            .run_planes(&[One, One], PowerState::Sleep, PowerState::Active)
            .unwrap();
        // output 0 depends on the AND plane; output 1 is a constant ancilla
        assert_eq!(and_asleep, vec![SimValue::Undefined, SimValue::Zero]);
        let or_asleep = sim
            .run_planes(&[One, One], PowerState::Active, PowerState::Sleep)
            .unwrap();
        assert_eq!(or_asleep, vec![SimValue::Undefined, SimValue::Undefined]);
    }

    #[test]
    fn domain_states_drive_simulation() {
        let mut nl = attach_sleep(xor_netlist()).unwrap();
        let before = Simulator::new(&nl)
            .unwrap()
            .run_domains(&[Zero, One])
            .unwrap();
        assert_eq!(before, vec![SimValue::One]);
        assert!(nl.set_domain_state(Plane::Or, PowerState::Sleep));
        let asleep = Simulator::new(&nl)
            .unwrap()
            .run_domains(&[Zero, One])
            .unwrap();
        assert_eq!(asleep, vec![SimValue::Undefined]);
        nl.set_domain_state(Plane::Or, PowerState::Active);
        let after = Simulator::new(&nl)
            .unwrap()
            .run_domains(&[Zero, One])
            .unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn mode_cycling_is_stateless() {
        let nl = xor_netlist();
        let sim = Simulator::new(&nl).unwrap();
        let first: Vec<_> = (0..4)
            .map(|w| sim.run(&word_to_bits(w, 2), SimMode::Active).unwrap())
            .collect();
        for _ in 0..3 {
            for w in 0..4 {
                sim.run(&word_to_bits(w, 2), SimMode::Sleep).unwrap();
                assert_eq!(
                    sim.run(&word_to_bits(w, 2), SimMode::Active).unwrap(),
                    first[w as usize]
                );
            }
        }
    }

    #[test]
    fn equivalence_pass_and_fail() {
        let spec = parse_pla(".i 2\n.o 1\n01 1\n10 1\n.e").unwrap();
        let nl = synthesize(&spec).unwrap();
        let r = verify_equivalence(&nl, &spec).unwrap();
        assert!(r.pass);
        assert_eq!((r.vectors, r.counterexamples.len()), (4, 0));

        let other = parse_pla(".i 2\n.o 1\n11 1\n.e").unwrap();
        let r = verify_equivalence(&nl, &other).unwrap();
        assert!(!r.pass);
        assert_eq!(r.counterexamples[0].input, "01");

        let wide = parse_pla(".i 3\n.o 1\n.e").unwrap();
        assert!(matches!(
            verify_equivalence(&nl, &wide),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn deleted_or_connection_is_caught() {
        let spec = parse_pla(".i 3\n.o 1\n1-1 1\n01- 1\n.e").unwrap();
        let mut nl = synthesize(&spec).unwrap();
        // Cut the minterm input of the first OR-plane MUX and tie it low.
        let gi = nl
            .gates
            .iter()
            .position(|g| g.plane == Plane::Or && g.kind == GateKind::Mux)
            .unwrap();
        let zero = nl.add_constant(Zero);
        let cut = std::mem::replace(&mut nl.gates[gi].inputs[2], zero);
        nl.garbage_wires.push(cut);
        let r = verify_equivalence(&nl, &spec).unwrap();
        assert!(!r.pass);
        assert!(!r.counterexamples.is_empty());
    }

    #[test]
    fn synthesized_netlists_audit_clean() {
        let spec = parse_pla(".i 3\n.o 2\n1-1 11\n0-- 01\n.e").unwrap();
        let r = audit_reversibility(&synthesize(&spec).unwrap());
        assert!(r.is_clean(), "{:?}", r.violations);
    }

    #[test]
    fn fanout_is_reported() {
        let mut nl = single_gate(GateKind::Feynman);
        let w = nl.primary_inputs[0];
        let c = nl.add_constant(Zero);
        nl.add_gate(GateKind::Feynman, vec![w, c], Plane::And);
        let r = audit_reversibility(&nl);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Fanout { wire, sinks: 2 } if *wire == w.0)));
    }

    #[test]
    fn cycle_is_reported() {
        let mut nl = RplaNetlist::default();
        let a = nl.add_wire(WireOrigin::PrimaryInput(0));
        nl.primary_inputs = vec![a];
        // gate 0 reads gate 1's output and vice versa
        let w = |gate, port| WireOrigin::GateOutput { gate, port };
        let g0 = [nl.add_wire(w(0, 0)), nl.add_wire(w(0, 1))];
        let g1 = [nl.add_wire(w(1, 0)), nl.add_wire(w(1, 1))];
        nl.gates.push(GateInstance {
            kind: GateKind::Feynman,
            inputs: vec![a, g1[0]],
            outputs: g0.to_vec(),
            plane: Plane::And,
        });
        nl.gates.push(GateInstance {
            kind: GateKind::Feynman,
            inputs: vec![g0[0], g0[1]],
            outputs: g1.to_vec(),
            plane: Plane::And,
        });
        nl.primary_outputs = vec![g1[1]];
        let r = audit_reversibility(&nl);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cycle { gates } if gates == &vec![0, 1])));
        assert!(matches!(Simulator::new(&nl), Err(Error::Netlist(_))));
    }

    #[test]
    fn arity_and_driver_violations() {
        let mut nl = single_gate(GateKind::Mux);
        nl.gates[0].inputs.pop();
        let extra = nl.add_wire(WireOrigin::PrimaryInput(9));
        nl.gates[0].outputs[0] = extra;
        let r = audit_reversibility(&nl);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Arity { gate: 0, .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Driver { .. })));
    }

    #[test]
    fn output_garbage_overlap_and_dangling() {
        let mut nl = single_gate(GateKind::Feynman);
        let [kept, lost] = [nl.gates[0].outputs[0], nl.gates[0].outputs[1]];
        nl.primary_outputs = vec![kept];
        nl.output_planes = vec![Plane::And];
        let r = audit_reversibility(&nl);
        assert_eq!(r.violations, vec![Violation::Dangling { wire: lost.0 }]);
        nl.garbage_wires = vec![kept, lost];
        let r = audit_reversibility(&nl);
        assert_eq!(
            r.violations,
            vec![Violation::OutputIsGarbage { wire: kept.0 }]
        );
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use crate::numfmt::sig;
use crate::{describe_violation, CliError, Document};
use tags::Tag;

const DIGITS: usize = 6;

fn num(x: f64) -> String {
    sig(x, DIGITS)
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn text(doc: &Document) -> String {
    let mut s = String::new();
    if let Some(t) = doc.generated_unix {
        let _ = writeln!(s, "generated_unix {t}");
    }
    if let Some(n) = &doc.netlist {
        let _ = writeln!(s, "netlist");
        for (k, v) in [
            ("inputs", n.inputs as u64),
            ("outputs", n.outputs as u64),
            ("gates", n.gates as u64),
            ("feynman", n.feynman as u64),
            ("mux", n.mux as u64),
            ("and_plane_gates", n.and_plane_gates as u64),
            ("or_plane_gates", n.or_plane_gates as u64),
            ("quantum_cost", n.quantum_cost),
            ("garbage", n.garbage as u64),
            ("ancilla", n.ancilla as u64),
        ] {
            let _ = writeln!(s, "  {k:<16} {v}");
        }
        let domains: Vec<String> = n
            .sleep_domains
            .iter()
            .map(|d| format!("{}:{}:{}", d.plane, d.switch_kind.tag(), d.state.tag()))
            .collect();
        let _ = writeln!(s, "  {:<16} {}", "sleep_domains", domains.join(" "));
        if let Some(gates) = &n.gate_list {
            let _ = writeln!(s, "gates");
            let _ = writeln!(s, "  # index kind inputs outputs plane");
            for g in gates {
                let _ = writeln!(
                    s,
                    "  {} {} {} {} {}",
                    g.index,
                    g.kind,
                    join_ids(&g.inputs),
                    join_ids(&g.outputs),
                    g.plane
                );
            }
        }
    }
    if let Some(sim) = &doc.simulation {
        let _ = writeln!(s, "simulation");
        let _ = writeln!(s, "  vector  {}", sim.vector);
        let _ = writeln!(s, "  mode    {}", sim.mode.tag());
        let _ = writeln!(s, "  outputs {}", sim.outputs);
    }
    if let Some(eq) = &doc.equivalence {
        let _ = writeln!(s, "equivalence");
        let passed = eq.vectors - eq.counterexamples.len() as u64;
        let verdict = if eq.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "  {verdict}, {passed}/{} vectors", eq.vectors);
        for c in &eq.counterexamples {
            let _ = writeln!(
                s,
                "  input {} expected {} got {}",
                c.input, c.expected, c.got
            );
        }
    }
    if let Some(audit) = &doc.audit {
        let _ = writeln!(s, "audit");
        if audit.is_clean() {
            let _ = writeln!(s, "  clean ({} gates, {} wires)", audit.gates, audit.wires);
        } else {
            for v in &audit.violations {
                let _ = writeln!(s, "  {}", describe_violation(v));
            }
        }
    }
    if let Some(p) = &doc.power {
        let lines = p.line_ratios.len();
        let _ = writeln!(s, "power");
        let _ = writeln!(s, "  calibration {} (picowatts)", p.calibration);
        let pm: String = (1..=lines)
            .map(|i| format!("{:>8}", format!("PM{i}")))
            .collect();
        let _ = writeln!(s, "  {:<8} {pm} | {pm}", "vector");
        let _ = writeln!(
            s,
            "  {:<8} {:>w$} | {:>w$}",
            "",
            "ungated",
            "gated",
            w = 8 * lines
        );
        for row in &p.table {
            let cells = |v: &[f64]| {
                v.iter()
                    .map(|x| format!("{:>8}", num(*x)))
                    .collect::<String>()
            };
            let _ = writeln!(
                s,
                "  {:<8} {} | {}",
                row.vector,
                cells(&row.ungated_pw),
                cells(&row.gated_pw)
            );
        }
        for (i, r) in p.line_ratios.iter().enumerate() {
            let _ = writeln!(s, "  line_ratio PM{} {}", i + 1, num(*r));
        }
        let _ = writeln!(s, "  ratio {}", num(p.ratio));
        let _ = writeln!(s, "  saving {}", num(p.saving));
        if let Some(f) = &p.reference_figure {
            let _ = writeln!(s, "  reference_figure {f}");
        }
        let l = &p.leakage;
        let _ = writeln!(s, "  leakage");
        let _ = writeln!(s, "    circuit_leakage_a {}", num(l.circuit_leakage_a));
        let _ = writeln!(s, "    vgnd_v {}", num(l.vgnd_v));
        let _ = writeln!(s, "    vgnd_clamped_v {}", num(l.vgnd_clamped_v));
        let _ = writeln!(s, "    clamped {}", l.clamped);
        let _ = writeln!(s, "    sleep_active_ratio {}", num(l.sleep_active_ratio));
        let _ = writeln!(s, "    balance_residual_a {}", num(l.balance_residual_a));
        if let Some(w) = p.average_power_w {
            let _ = writeln!(s, "  average_power_w {}", num(w));
        }
    }
    s
}

pub(crate) fn csv(doc: &Document) -> Result<String, CliError> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    let err = |e: ::csv::Error| CliError::Usage(format!("csv encoding failed: {e}"));
    if let Some(p) = &doc.power {
        w.write_record(["vector", "pm_index", "ungated_pw", "gated_pw"])
            .map_err(err)?;
        for row in &p.table {
            for (i, (u, g)) in row.ungated_pw.iter().zip(&row.gated_pw).enumerate() {
                w.write_record([row.vector.clone(), (i + 1).to_string(), num(*u), num(*g)])
                    .map_err(err)?;
            }
        }
    } else if let Some(sim) = &doc.simulation {
        w.write_record(["output_index", "value"]).map_err(err)?;
        for (i, c) in sim.outputs.chars().enumerate() {
            w.write_record([i.to_string(), c.to_string()])
                .map_err(err)?;
        }
    } else if let Some(eq) = &doc.equivalence {
        w.write_record(["input", "expected", "got"]).map_err(err)?;
        for c in &eq.counterexamples {
            w.write_record([&c.input, &c.expected, &c.got])
                .map_err(err)?;
        }
    } else if let Some(gates) = doc.netlist.as_ref().and_then(|n| n.gate_list.as_ref()) {
        w.write_record(["index", "kind", "inputs", "outputs", "plane"])
            .map_err(err)?;
        for g in gates {
            w.write_record([
                g.index.to_string(),
                g.kind.clone(),
                join_ids(&g.inputs),
                join_ids(&g.outputs),
                g.plane.clone(),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))
}

/// Lowercase tags for the small enums shown in text output.
mod tags {
    use revpla_core::{PowerState, SimMode, SwitchKind};

    pub trait Tag {
        fn tag(&self) -> &'static str;
    }

    impl Tag for SwitchKind {
        fn tag(&self) -> &'static str {
            match self {
                SwitchKind::Footer => "footer",
            }
        }
    }

    impl Tag for PowerState {
        fn tag(&self) -> &'static str {
            match self {
                PowerState::Active => "active",
                PowerState::Sleep => "sleep",
            }
        }
    }

    impl Tag for SimMode {
        fn tag(&self) -> &'static str {
            match self {
                SimMode::Active => "active",
                SimMode::Sleep => "sleep",
            }
        }
    }
}

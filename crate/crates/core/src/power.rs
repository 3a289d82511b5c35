// SPDX-License-Identifier: Apache-2.0

//! Footer power-gating model.
//!
//! Subthreshold current of a device:
//!
//! ```text
//! I = I0 * (W/L) * 10^(((Vg - Vth) + eta * Vds) / ss)
//! ```
//!
//! With a footer switch the circuit's leakage equals the footer's. Solving
//! that balance for the virtual ground node gives
//!
//! ```text
//! Vgnd = (-Vg + ss * log10(Wc / Wf) + (VthF - VthC + eta * Vdd)) / (2 * eta)
//! ```
//!
//! and the sleep/active leakage ratio is `10^(-(eta * (Vdd - Vgnd)) / ss)`.
//! All slopes are in volts per decade.
//!
//! The per-line wattmeter table is driven by a [`CalibrationTable`] of
//! measured readings; nothing in the analytic chain above is used to
//! produce those numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(msg))
    }
}

fn finite(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if !v.is_finite() {
            return Err(Error::param(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    /// Current scale, amperes.
    pub i0: f64,
    /// W/L of the logic block.
    pub wl_circuit: f64,
    /// W/L of the footer switch.
    pub wl_footer: f64,
    pub vth_circuit: f64,
    pub vth_footer: f64,
    /// DIBL coefficient.
    pub eta: f64,
    /// Subthreshold slope, volts per decade.
    pub ss: f64,
    pub vdd: f64,
    /// Gate voltage applied to the footer.
    pub vg_footer: f64,
}

impl DeviceParams {
    pub const KEYS: [&'static str; 9] = [
        "i0",
        "wl_circuit",
        "wl_footer",
        "vth_circuit",
        "vth_footer",
        "eta",
        "ss",
        "vdd",
        "vg_footer",
    ];

    pub fn validate(&self) -> Result<()> {
        finite(&[
            ("i0", self.i0),
            ("wl_circuit", self.wl_circuit),
            ("wl_footer", self.wl_footer),
            ("vth_circuit", self.vth_circuit),
            ("vth_footer", self.vth_footer),
            ("eta", self.eta),
            ("ss", self.ss),
            ("vdd", self.vdd),
            ("vg_footer", self.vg_footer),
        ])?;
        require(self.i0 > 0.0, "i0 must be positive")?;
        require(self.wl_circuit > 0.0, "wl_circuit must be positive")?;
        require(self.wl_footer > 0.0, "wl_footer must be positive")?;
        require(self.eta > 0.0, "eta must be positive")?;
        require(self.ss > 0.0, "ss must be positive")?;
        require(self.vdd > 0.0, "vdd must be positive")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ActivityParams {
    /// Probability of a 0 -> 1 transition per cycle.
    pub alpha: f64,
    /// Load capacitance, farads.
    pub c_load: f64,
    /// Clock frequency, hertz.
    pub f_clk: f64,
    pub i_shortcircuit: f64,
    pub i_leakage: f64,
    pub i_static: f64,
}

impl ActivityParams {
    pub const KEYS: [&'static str; 6] = [
        "alpha",
        "c_load",
        "f_clk",
        "i_shortcircuit",
        "i_leakage",
        "i_static",
    ];

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("alpha", self.alpha),
            ("c_load", self.c_load),
            ("f_clk", self.f_clk),
            ("i_shortcircuit", self.i_shortcircuit),
            ("i_leakage", self.i_leakage),
            ("i_static", self.i_static),
        ];
        finite(&fields)?;
        for (name, v) in fields {
            if v < 0.0 {
                return Err(Error::param(format!("{name} must be nonnegative, got {v}")));
            }
        }
        require(self.alpha <= 1.0, "alpha must not exceed 1")
    }
}

pub fn subthreshold_current(
    i0: f64,
    wl: f64,
    vg: f64,
    vth: f64,
    eta: f64,
    vds: f64,
    ss: f64,
) -> Result<f64> {
    finite(&[
        ("i0", i0),
        ("wl", wl),
        ("vg", vg),
        ("vth", vth),
        ("eta", eta),
        ("vds", vds),
        ("ss", ss),
    ])?;
    require(ss > 0.0, "ss must be positive")?;
    require(wl > 0.0, "wl must be positive")?;
    require(i0 > 0.0, "i0 must be positive")?;
    Ok(i0 * wl * 10f64.powf(((vg - vth) + eta * vds) / ss))
}

/// Virtual ground potential at which circuit and footer leakage balance.
///
/// Evaluated as written; the result may exceed `vdd`.
pub fn virtual_ground(p: &DeviceParams) -> Result<f64> {
    p.validate()?;
    let width_ratio = p.wl_circuit / p.wl_footer;
    require(
        width_ratio > 0.0 && width_ratio.is_finite(),
        "width ratio must be positive",
    )?;
    Ok(
        (-p.vg_footer
            + p.ss * width_ratio.log10()
            + (p.vth_footer - p.vth_circuit + p.eta * p.vdd))
            / (2.0 * p.eta),
    )
}

/// Circuit leakage minus footer leakage at virtual ground `vgnd`.
///
/// The circuit sees `vdd - vgnd` across it with its gates at 0 V relative
/// to the virtual rail; the footer sees `vgnd` as its drain-source voltage.
pub fn leakage_balance_residual(p: &DeviceParams, vgnd: f64) -> Result<f64> {
    p.validate()?;
    finite(&[("vgnd", vgnd)])?;
    let circuit = subthreshold_current(
        p.i0,
        p.wl_circuit,
        0.0,
        p.vth_circuit,
        p.eta,
        p.vdd - vgnd,
        p.ss,
    )?;
    let footer = subthreshold_current(
        p.i0,
        p.wl_footer,
        p.vg_footer,
        p.vth_footer,
        p.eta,
        vgnd,
        p.ss,
    )?;
    Ok(circuit - footer)
}

/// Root of [`leakage_balance_residual`] on `[lo, hi]` by bisection.
///
/// Returns `None` when the residual does not change sign on the bracket.
pub fn balance_point(p: &DeviceParams, lo: f64, hi: f64) -> Result<Option<f64>> {
    let (mut lo, mut hi) = (lo, hi);
    let mut r_lo = leakage_balance_residual(p, lo)?;
    let r_hi = leakage_balance_residual(p, hi)?;
    if r_lo == 0.0 {
        return Ok(Some(lo));
    }
    if r_hi == 0.0 {
        return Ok(Some(hi));
    }
    if (r_lo > 0.0) == (r_hi > 0.0) {
        return Ok(None);
    }
    // Halve until the bracket stops shrinking in f64.
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = leakage_balance_residual(p, mid)?;
        if r == 0.0 {
            return Ok(Some(mid));
        }
        if (r > 0.0) == (r_lo > 0.0) {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (
        leakage_balance_residual(p, lo)?.abs(),
        leakage_balance_residual(p, hi)?.abs(),
    );
    Ok(Some(if a <= b { lo } else { hi }))
}

/// Sleep-to-active leakage ratio for a given virtual ground.
pub fn sleep_active_ratio(eta: f64, vdd: f64, vgnd: f64, ss: f64) -> Result<f64> {
    finite(&[("eta", eta), ("vdd", vdd), ("vgnd", vgnd), ("ss", ss)])?;
    require(ss > 0.0, "ss must be positive")?;
    Ok(10f64.powf(-(eta * (vdd - vgnd)) / ss))
}

/// Dynamic + short-circuit + leakage + static power, watts.
pub fn total_average_power(a: &ActivityParams, vdd: f64) -> Result<f64> {
    a.validate()?;
    finite(&[("vdd", vdd)])?;
    Ok(a.alpha * a.c_load * vdd * vdd * a.f_clk
        + a.i_shortcircuit * vdd
        + a.i_leakage * vdd
        + a.i_static * vdd)
}

/// Analytic leakage figures for one device parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakageReport {
    /// Circuit subthreshold current with `vds = vdd - vgnd`, amperes.
    pub circuit_leakage_a: f64,
    /// Virtual ground from the closed form, unclamped, volts.
    pub vgnd_v: f64,
    /// `vgnd_v` limited to `[0, vdd]`; this value feeds the ratio.
    pub vgnd_clamped_v: f64,
    pub clamped: bool,
    pub sleep_active_ratio: f64,
    /// Circuit minus footer leakage at `vgnd_v`, amperes.
    pub balance_residual_a: f64,
}

pub fn leakage_report(p: &DeviceParams) -> Result<LeakageReport> {
    let vgnd = virtual_ground(p)?;
    let clamped_v = vgnd.clamp(0.0, p.vdd);
    Ok(LeakageReport {
        circuit_leakage_a: subthreshold_current(
            p.i0,
            p.wl_circuit,
            0.0,
            p.vth_circuit,
            p.eta,
            p.vdd - vgnd,
            p.ss,
        )?,
        vgnd_v: vgnd,
        vgnd_clamped_v: clamped_v,
        clamped: clamped_v != vgnd,
        sleep_active_ratio: sleep_active_ratio(p.eta, p.vdd, clamped_v, p.ss)?,
        balance_residual_a: leakage_balance_residual(p, vgnd)?,
    })
}

/// Per-input-line wattmeter readings, picowatts, taken while the line is
/// held at logic 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTable {
    pub name: String,
    pub per_line_cmos_pw: Vec<f64>,
    pub per_line_gated_pw: Vec<f64>,
    /// Headline figure quoted alongside these measurements, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_figure: Option<String>,
}

impl CalibrationTable {
    /// Three-input reference measurements of the ungated and footer-gated
    /// array (lines A, B, C).
    pub fn table1() -> Self {
        CalibrationTable {
            name: "table1".to_string(),
            per_line_cmos_pw: vec![187.71, 221.92, 221.91],
            per_line_gated_pw: vec![90.57, 90.57, 90.57],
            reference_figure: Some("40.8%".to_string()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.per_line_cmos_pw.len() != self.per_line_gated_pw.len() {
            return Err(Error::usage(format!(
                "calibration has {} ungated and {} gated lines",
                self.per_line_cmos_pw.len(),
                self.per_line_gated_pw.len()
            )));
        }
        for v in self.per_line_cmos_pw.iter().chain(&self.per_line_gated_pw) {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::param(format!(
                    "calibration reading {v} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }

    pub fn lines(&self) -> usize {
        self.per_line_cmos_pw.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    /// Input vector, first character is line 1.
    pub vector: String,
    pub ungated_pw: Vec<f64>,
    pub gated_pw: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub calibration: String,
    pub rows: Vec<PowerRow>,
    /// Sum of gated over sum of ungated readings on the all-ones vector.
    pub consumption_ratio: f64,
    /// `1 - consumption_ratio`.
    pub saving: f64,
    /// Gated over ungated reading for each line.
    pub line_ratios: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_figure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leakage: Option<LeakageReport>,
}

/// Wattmeter table over all `2^n` input vectors. Reading `i` of a row is
/// the calibrated value for line `i` when that line is 1, and zero otherwise.
pub fn power_table(n: usize, calib: &CalibrationTable) -> Result<PowerReport> {
    calib.validate()?;
    if calib.lines() != n {
        return Err(Error::usage(format!(
            "calibration '{}' has {} lines, need {n}",
            calib.name,
            calib.lines()
        )));
    }
    if n == 0 || n > crate::plaspec::MAX_INPUTS {
        return Err(Error::usage(format!("line count {n} out of range")));
    }
    let rows = (0..1u32 << n)
        .map(|w| {
            let bits = crate::gates::word_to_bits(w, n);
            let pick = |table: &[f64]| -> Vec<f64> {
                bits.iter()
                    .zip(table)
                    .map(|(b, v)| if b.as_bool() { *v } else { 0.0 })
                    .collect()
            };
            PowerRow {
                vector: bits.iter().map(|b| b.as_char()).collect(),
                ungated_pw: pick(&calib.per_line_cmos_pw),
                gated_pw: pick(&calib.per_line_gated_pw),
            }
        })
        .collect();
    let ungated: f64 = calib.per_line_cmos_pw.iter().sum();
    let gated: f64 = calib.per_line_gated_pw.iter().sum();
    let ratio = |g: f64, u: f64| if u > 0.0 { g / u } else { f64::NAN };
    let consumption_ratio = ratio(gated, ungated);
    Ok(PowerReport {
        calibration: calib.name.clone(),
        rows,
        consumption_ratio,
        saving: 1.0 - consumption_ratio,
        line_ratios: calib
            .per_line_gated_pw
            .iter()
            .zip(&calib.per_line_cmos_pw)
            .map(|(&g, &u)| ratio(g, u))
            .collect(),
        reference_figure: calib.reference_figure.clone(),
        leakage: None,
    })
}

/// Device and optional activity parameters read from a `key = value` file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub device: DeviceParams,
    pub activity: Option<ActivityParams>,
}

fn kv_lines(text: &str) -> Result<BTreeMap<String, (String, usize)>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (k, v) = content.split_once('=').ok_or_else(|| Error::Format {
            line,
            msg: format!("expected `key = value`, got {content:?}"),
        })?;
        let k = k.trim().to_string();
        if map
            .insert(k.clone(), (v.trim().to_string(), line))
            .is_some()
        {
            return Err(Error::Format {
                line,
                msg: format!("duplicate key {k:?}"),
            });
        }
    }
    Ok(map)
}

fn take_f64(map: &mut BTreeMap<String, (String, usize)>, key: &str) -> Result<Option<f64>> {
    match map.remove(key) {
        None => Ok(None),
        Some((v, line)) => v.parse::<f64>().map(Some).map_err(|_| Error::Format {
            line,
            msg: format!("{key}: {v:?} is not a number"),
        }),
    }
}

fn missing(keys: &[&str]) -> Error {
    Error::Format {
        line: 0,
        msg: format!("missing keys: {}", keys.join(", ")),
    }
}

/// Parses a parameter file. All device keys are required; activity keys
/// are all-or-nothing.
pub fn parse_params(text: &str) -> Result<ParamSet> {
    let mut map = kv_lines(text)?;
    let mut dev = [0.0; 9];
    let mut absent = Vec::new();
    for (slot, key) in dev.iter_mut().zip(DeviceParams::KEYS) {
        match take_f64(&mut map, key)? {
            Some(v) => *slot = v,
            None => absent.push(key),
        }
    }
    if !absent.is_empty() {
        return Err(missing(&absent));
    }
    let device = DeviceParams {
        i0: dev[0],
        wl_circuit: dev[1],
        wl_footer: dev[2],
        vth_circuit: dev[3],
        vth_footer: dev[4],
        eta: dev[5],
        ss: dev[6],
        vdd: dev[7],
        vg_footer: dev[8],
    };

    let mut act = [0.0; 6];
    let mut present = 0;
    absent.clear();
    for (slot, key) in act.iter_mut().zip(ActivityParams::KEYS) {
        match take_f64(&mut map, key)? {
            Some(v) => {
                *slot = v;
                present += 1;
            }
            None => absent.push(key),
        }
    }
    let activity = match present {
        0 => None,
        6 => Some(ActivityParams {
            alpha: act[0],
            c_load: act[1],
            f_clk: act[2],
            i_shortcircuit: act[3],
            i_leakage: act[4],
            i_static: act[5],
        }),
        _ => return Err(missing(&absent)),
    };

    if let Some((k, (_, line))) = map.into_iter().next() {
        return Err(Error::Format {
            line,
            msg: format!("unknown key {k:?}"),
        });
    }
    device.validate()?;
    if let Some(a) = &activity {
        a.validate()?;
    }
    Ok(ParamSet { device, activity })
}

fn parse_list(key: &str, v: &str, line: usize) -> Result<Vec<f64>> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>().map_err(|_| Error::Format {
                line,
                msg: format!("{key}: {s:?} is not a number"),
            })
        })
        .collect()
}

/// Parses a calibration file with `per_line_cmos_pw` and `per_line_gated_pw`
/// lists (comma or space separated) and an optional `name`.
pub fn parse_calibration(text: &str) -> Result<CalibrationTable> {
    let mut map = kv_lines(text)?;
    let mut list = |key: &str| -> Result<Vec<f64>> {
        let (v, line) = map.remove(key).ok_or_else(|| missing(&[key]))?;
        parse_list(key, &v, line)
    };
    let cmos = list("per_line_cmos_pw")?;
    let gated = list("per_line_gated_pw")?;
    let name = map
        .remove("name")
        .map(|(v, _)| v)
        .unwrap_or_else(|| "custom".into());
    let reference_figure = map.remove("reference_figure").map(|(v, _)| v);
    if let Some((k, (_, line))) = map.into_iter().next() {
        return Err(Error::Format {
            line,
            msg: format!("unknown key {k:?}"),
        });
    }
    let calib = CalibrationTable {
        name,
        per_line_cmos_pw: cmos,
        per_line_gated_pw: gated,
        reference_figure,
    };
    calib.validate()?;
    Ok(calib)
}

// SPDX-License-Identifier: Apache-2.0

//! The two reversible gates used by the array: Feynman (CNOT) and MUX.
//!
//! Feynman: `P = A`, `Q = A ^ B`.
//! MUX: `P = A`, `Q = A ^ B ^ C`, `R = (!A & C) ^ (A & B)`.
//!
//! Constant bindings give the classical primitives the planes are built
//! from: MUX with `C = 0` is AND on `R`, MUX with `B = 1` is OR on `R`,
//! Feynman with `B = 1` is NOT on `Q` and Feynman with `B = 0` copies `A`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use serde::{Deserialize, Serialize};

use crate::netlist::RplaNetlist;

/// A binary logic level.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[repr(u8)]
pub enum Bit {
    #[default]
    Zero = 0,
    One = 1,
}

impl Bit {
    #[inline]
    pub fn from_bool(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }

    #[inline]
    pub fn as_bool(self) -> bool {
        self == Bit::One
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit::from_bool(b)
    }
}

impl From<Bit> for bool {
    fn from(b: Bit) -> Self {
        b.as_bool()
    }
}

impl Not for Bit {
    type Output = Bit;
    fn not(self) -> Bit {
        Bit::from_bool(!self.as_bool())
    }
}

impl BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit::from_bool(self.as_bool() ^ rhs.as_bool())
    }
}

impl BitAnd for Bit {
    type Output = Bit;
    fn bitand(self, rhs: Bit) -> Bit {
        Bit::from_bool(self.as_bool() & rhs.as_bool())
    }
}

impl BitOr for Bit {
    type Output = Bit;
    fn bitor(self, rhs: Bit) -> Bit {
        Bit::from_bool(self.as_bool() | rhs.as_bool())
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Feynman,
    Mux,
}

impl GateKind {
    pub const ALL: [GateKind; 2] = [GateKind::Feynman, GateKind::Mux];

    /// Number of inputs, which always equals the number of outputs.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Feynman => 2,
            GateKind::Mux => 3,
        }
    }

    pub fn quantum_cost(self) -> u64 {
        match self {
            GateKind::Feynman => 1,
            GateKind::Mux => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Feynman => "feynman",
            GateKind::Mux => "mux",
        }
    }

    /// Evaluates the gate on a slice of exactly `arity()` bits.
    ///
    /// # Panics
    ///
    /// Panics if `inputs.len() != self.arity()`.
    pub fn eval(self, inputs: &[Bit]) -> Vec<Bit> {
        assert_eq!(inputs.len(), self.arity(), "{} gate arity", self.name());
        match self {
            GateKind::Feynman => {
                let (p, q) = eval_feynman(inputs[0], inputs[1]);
                vec![p, q]
            }
            GateKind::Mux => {
                let (p, q, r) = eval_mux(inputs[0], inputs[1], inputs[2]);
                vec![p, q, r]
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[inline]
pub fn eval_feynman(a: Bit, b: Bit) -> (Bit, Bit) {
    (a, a ^ b)
}

#[inline]
pub fn eval_mux(a: Bit, b: Bit, c: Bit) -> (Bit, Bit, Bit) {
    (a, a ^ b ^ c, (!a & c) ^ (a & b))
}

/// Exhaustive input/output map of a gate.
///
/// Words are packed with the first line as the most significant bit, so
/// for a MUX gate the input word `0b110` means `A=1, B=1, C=0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    arity: usize,
    rows: Vec<u32>,
}

impl TruthTable {
    /// Builds a table from `rows[input_word] = output_word`.
    ///
    /// Returns `None` unless there are exactly `2^arity` rows and every output
    /// word fits in `arity` bits.
    pub fn from_rows(arity: usize, rows: Vec<u32>) -> Option<Self> {
        if arity == 0 || arity > 16 || rows.len() != 1usize << arity {
            return None;
        }
        if rows.iter().any(|&w| w >> arity != 0) {
            return None;
        }
        Some(TruthTable { arity, rows })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn output(&self, input: u32) -> u32 {
        self.rows[input as usize]
    }
}

pub(crate) fn word_to_bits(word: u32, width: usize) -> Vec<Bit> {
    (0..width)
        .map(|i| Bit::from_bool((word >> (width - 1 - i)) & 1 == 1))
        .collect()
}

pub(crate) fn bits_to_word(bits: &[Bit]) -> u32 {
    bits.iter().fold(0, |acc, b| (acc << 1) | *b as u32)
}

pub fn truth_table(kind: GateKind) -> TruthTable {
    let arity = kind.arity();
    let rows = (0..1u32 << arity)
        .map(|w| bits_to_word(&kind.eval(&word_to_bits(w, arity))))
        .collect();
    TruthTable { arity, rows }
}

/// True iff the table is a permutation of its input words.
pub fn check_bijective(table: &TruthTable) -> bool {
    let mut seen = vec![false; table.rows.len()];
    for &out in &table.rows {
        let slot = &mut seen[out as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// Sum of per-gate costs; constant bindings do not change a gate's cost.
pub fn quantum_cost(netlist: &RplaNetlist) -> u64 {
    netlist.gates.iter().map(|g| g.kind.quantum_cost()).sum()
}

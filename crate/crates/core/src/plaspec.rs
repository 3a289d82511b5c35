// SPDX-License-Identifier: Apache-2.0

//! PLA function descriptions and the brute-force reference evaluator.
//!
//! The accepted text format is a strict subset of the two-level PLA
//! interchange format:
//!
//! ```text
//! # full adder
//! .i 3
//! .o 2
//! .p 7
//! 001 10
//! 010 10
//! 100 10
//! 111 11
//! -11 01
//! 1-1 01
//! 11- 01
//! .e
//! ```
//!
//! Input characters are `0`, `1` or `-` (don't care); output characters are
//! `0` or `1`. Overlapping cubes OR together. The first input column is the
//! most significant bit of an input word.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{word_to_bits, Bit};

/// Largest input count accepted; exhaustive operations visit `2^n` words.
pub const MAX_INPUTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cube {
    /// `None` is a don't-care position.
    pub inputs: Vec<Option<Bit>>,
    pub outputs: Vec<Bit>,
}

impl Cube {
    /// Parses a cube from its two text fields, e.g. `("1-0", "01")`.
    pub fn from_fields(inputs: &str, outputs: &str) -> std::result::Result<Cube, String> {
        let inputs = inputs
            .chars()
            .map(|c| match c {
                '0' => Ok(Some(Bit::Zero)),
                '1' => Ok(Some(Bit::One)),
                '-' => Ok(None),
                other => Err(format!(
                    "invalid input character {other:?} (expected 0, 1 or -)"
                )),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let outputs = outputs
            .chars()
            .map(|c| match c {
                '0' => Ok(Bit::Zero),
                '1' => Ok(Bit::One),
                other => Err(format!(
                    "invalid output character {other:?} (expected 0 or 1)"
                )),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cube { inputs, outputs })
    }

    /// Whether the cube's input field covers `word` (first column = MSB).
    pub fn covers(&self, word: u32) -> bool {
        let n = self.inputs.len();
        self.inputs.iter().enumerate().all(|(i, lit)| match lit {
            None => true,
            Some(b) => ((word >> (n - 1 - i)) & 1 == 1) == b.as_bool(),
        })
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lit in &self.inputs {
            f.write_str(match lit {
                None => "-",
                Some(Bit::Zero) => "0",
                Some(Bit::One) => "1",
            })?;
        }
        f.write_str(" ")?;
        for b in &self.outputs {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaSpec {
    num_inputs: usize,
    num_outputs: usize,
    cubes: Vec<Cube>,
}

impl PlaSpec {
    pub fn new(num_inputs: usize, num_outputs: usize, cubes: Vec<Cube>) -> Result<Self> {
        if num_inputs == 0 || num_inputs > MAX_INPUTS {
            return Err(Error::usage(format!(
                "input count {num_inputs} outside 1..={MAX_INPUTS}"
            )));
        }
        if num_outputs == 0 {
            return Err(Error::usage("output count must be at least 1"));
        }
        for (i, c) in cubes.iter().enumerate() {
            if c.inputs.len() != num_inputs || c.outputs.len() != num_outputs {
                return Err(Error::usage(format!("cube {i} has the wrong width")));
            }
        }
        Ok(PlaSpec {
            num_inputs,
            num_outputs,
            cubes,
        })
    }

    /// Single-output spec asserting exactly the given minterms.
    pub fn from_minterms(num_inputs: usize, minterms: &[u32]) -> Result<Self> {
        let cubes = minterms
            .iter()
            .map(|&m| Cube {
                inputs: word_to_bits(m, num_inputs).into_iter().map(Some).collect(),
                outputs: vec![Bit::One],
            })
            .collect();
        PlaSpec::new(num_inputs, 1, cubes)
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.num_outputs
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Reference evaluation on a packed input word.
    pub fn eval_word(&self, word: u32) -> Result<Vec<Bit>> {
        if word as u64 >= 1u64 << self.num_inputs {
            return Err(Error::usage(format!(
                "input word {word} does not fit in {} bits",
                self.num_inputs
            )));
        }
        let mut out = vec![Bit::Zero; self.num_outputs];
        for cube in self.cubes.iter().filter(|c| c.covers(word)) {
            for (o, b) in out.iter_mut().zip(&cube.outputs) {
                *o = *o | *b;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PlaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, ".i {}", self.num_inputs)?;
        writeln!(f, ".o {}", self.num_outputs)?;
        writeln!(f, ".p {}", self.cubes.len())?;
        for c in &self.cubes {
            writeln!(f, "{c}")?;
        }
        writeln!(f, ".e")
    }
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

fn parse_count(arg: Option<&str>, directive: &str, line: usize) -> Result<usize> {
    let arg = arg.ok_or_else(|| format_err(line, format!("{directive} needs a count")))?;
    arg.parse::<usize>()
        .map_err(|_| format_err(line, format!("{directive}: invalid count {arg:?}")))
}

pub fn parse_pla(text: &str) -> Result<PlaSpec> {
    let mut num_inputs: Option<usize> = None;
    let mut num_outputs: Option<usize> = None;
    let mut declared: Option<(usize, usize)> = None;
    let mut cubes = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let head = fields.next().unwrap_or("");

        if let Some(directive) = head.strip_prefix('.') {
            let arg = fields.next();
            if fields.next().is_some() {
                return Err(format_err(
                    line,
                    format!(".{directive}: too many arguments"),
                ));
            }
            match directive {
                "i" => {
                    if num_inputs.is_some() {
                        return Err(format_err(line, "duplicate .i"));
                    }
                    if !cubes.is_empty() {
                        return Err(format_err(line, ".i after cubes"));
                    }
                    let n = parse_count(arg, ".i", line)?;
                    if n == 0 || n > MAX_INPUTS {
                        return Err(format_err(
                            line,
                            format!(".i {n}: input count must be in 1..={MAX_INPUTS}"),
                        ));
                    }
                    num_inputs = Some(n);
                }
                "o" => {
                    if num_outputs.is_some() {
                        return Err(format_err(line, "duplicate .o"));
                    }
                    if !cubes.is_empty() {
                        return Err(format_err(line, ".o after cubes"));
                    }
                    let m = parse_count(arg, ".o", line)?;
                    if m == 0 {
                        return Err(format_err(line, ".o 0: need at least one output"));
                    }
                    num_outputs = Some(m);
                }
                "p" => {
                    if declared.is_some() {
                        return Err(format_err(line, "duplicate .p"));
                    }
                    declared = Some((parse_count(arg, ".p", line)?, line));
                }
                "e" | "end" => {
                    if arg.is_some() {
                        return Err(format_err(line, ".e takes no argument"));
                    }
                    break;
                }
                other => {
                    return Err(format_err(line, format!("unsupported directive .{other}")));
                }
            }
            continue;
        }

        let (n, m) = match (num_inputs, num_outputs) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(format_err(line, "cube before .i and .o")),
        };
        let ins = head;
        let outs = fields
            .next()
            .ok_or_else(|| format_err(line, "cube is missing its output field"))?;
        if fields.next().is_some() {
            return Err(format_err(line, "cube has more than two fields"));
        }
        let cube = Cube::from_fields(ins, outs).map_err(|msg| format_err(line, msg))?;
        if cube.inputs.len() != n {
            return Err(format_err(
                line,
                format!(
                    "input field has {} characters, expected {n}",
                    cube.inputs.len()
                ),
            ));
        }
        if cube.outputs.len() != m {
            return Err(format_err(
                line,
                format!(
                    "output field has {} characters, expected {m}",
                    cube.outputs.len()
                ),
            ));
        }
        cubes.push(cube);
    }

    let n = num_inputs.ok_or_else(|| format_err(last_line.max(1), "missing .i directive"))?;
    let m = num_outputs.ok_or_else(|| format_err(last_line.max(1), "missing .o directive"))?;
    if let Some((p, line)) = declared {
        if p != cubes.len() {
            return Err(format_err(
                line,
                format!(".p declares {p} cubes but {} were given", cubes.len()),
            ));
        }
    }
    PlaSpec::new(n, m, cubes)
}

/// Reference evaluation on an explicit bit vector (first bit = line 0).
pub fn eval_spec(spec: &PlaSpec, input: &[Bit]) -> Result<Vec<Bit>> {
    if input.len() != spec.num_inputs {
        return Err(Error::usage(format!(
            "input has {} bits, spec has {} inputs",
            input.len(),
            spec.num_inputs
        )));
    }
    spec.eval_word(crate::gates::bits_to_word(input))
}

/// Input words on which output `output_index` is 1.
pub fn minterm_set(spec: &PlaSpec, output_index: usize) -> Result<BTreeSet<u32>> {
    if output_index >= spec.num_outputs {
        return Err(Error::usage(format!(
            "output index {output_index} out of range (spec has {} outputs)",
            spec.num_outputs
        )));
    }
    let mut set = BTreeSet::new();
    for cube in &spec.cubes {
        if !cube.outputs[output_index].as_bool() {
            continue;
        }
        // Expand the cube's don't-cares directly rather than scanning 2^n words.
        let n = cube.inputs.len();
        let mut base = 0u32;
        let mut free = Vec::new();
        for (i, lit) in cube.inputs.iter().enumerate() {
            let bit = n - 1 - i;
            match lit {
                Some(Bit::One) => base |= 1 << bit,
                Some(Bit::Zero) => {}
                None => free.push(bit),
            }
        }
        for k in 0..1u32 << free.len() {
            let mut w = base;
            for (j, &bit) in free.iter().enumerate() {
                if (k >> j) & 1 == 1 {
                    w |= 1 << bit;
                }
            }
            set.insert(w);
        }
    }
    Ok(set)
}

/// Parses a bit string such as `"101"`.
pub fn parse_bits(s: &str) -> Result<Vec<Bit>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(Bit::Zero),
            '1' => Ok(Bit::One),
            other => Err(Error::usage(format!("invalid bit {other:?} in {s:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xor2() -> PlaSpec {
        parse_pla(".i 2\n.o 1\n01 1\n10 1\n.e\n").unwrap()
    }

    #[test]
    fn parses_single_cube() {
        let s = parse_pla(".i 3\n.o 1\n111 1\n.e").unwrap();
        assert_eq!(
            (s.num_inputs(), s.num_outputs(), s.cubes().len()),
            (3, 1, 1)
        );
    }

    #[test]
    fn dont_care_covers_both() {
        let s = parse_pla(".i 2\n.o 1\n0- 1\n.e").unwrap();
        assert_eq!(minterm_set(&s, 0).unwrap(), BTreeSet::from([0b00, 0b01]));
    }

    #[test]
    fn width_mismatch_reports_line() {
        let err = parse_pla(".i 2\n.o 1\n011 1\n.e").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn missing_directives() {
        assert!(matches!(parse_pla(".o 1\n.e"), Err(Error::Format { .. })));
        assert!(matches!(parse_pla(".i 1\n.e"), Err(Error::Format { .. })));
        assert!(matches!(parse_pla(""), Err(Error::Format { line: 1, .. })));
        assert!(matches!(
            parse_pla("11 1\n.i 2\n.o 1"),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn bad_characters() {
        assert!(matches!(
            parse_pla(".i 2\n.o 1\n0x 1\n"),
            Err(Error::Format { line: 3, .. })
        ));
        assert!(matches!(
            parse_pla(".i 2\n.o 1\n01 -\n"),
            Err(Error::Format { line: 3, .. })
        ));
    }

    #[test]
    fn product_count_checked() {
        let err = parse_pla(".i 1\n.o 1\n.p 2\n1 1\n.e").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }));
    }

    #[test]
    fn too_many_inputs() {
        assert!(parse_pla(".i 17\n.o 1\n.e").is_err());
        assert!(parse_pla(".i 16\n.o 1\n.e").is_ok());
    }

    #[test]
    fn crlf_and_comments() {
        let s = parse_pla("# xor\r\n.i 2\r\n.o 1 # one output\r\n01 1\r\n10 1\r\n.e\r\n").unwrap();
        assert_eq!(s, xor2());
    }

    #[test]
    fn eval_examples() {
        let and2 = parse_pla(".i 2\n.o 1\n11 1\n").unwrap();
        assert_eq!(
            eval_spec(&and2, &parse_bits("11").unwrap()).unwrap(),
            vec![Bit::One]
        );
        assert_eq!(
            eval_spec(&and2, &parse_bits("10").unwrap()).unwrap(),
            vec![Bit::Zero]
        );
        let x = xor2();
        let got: Vec<Bit> = (0..4).map(|w| x.eval_word(w).unwrap()[0]).collect();
        assert_eq!(got, [Bit::Zero, Bit::One, Bit::One, Bit::Zero]);
        assert!(matches!(eval_spec(&x, &[Bit::One]), Err(Error::Usage(_))));
    }

    #[test]
    fn minterm_examples() {
        assert_eq!(minterm_set(&xor2(), 0).unwrap(), BTreeSet::from([1, 2]));
        let taut = parse_pla(".i 2\n.o 1\n-- 1\n").unwrap();
        assert_eq!(minterm_set(&taut, 0).unwrap(), BTreeSet::from([0, 1, 2, 3]));
        let empty = parse_pla(".i 2\n.o 2\n.e").unwrap();
        assert!(minterm_set(&empty, 0).unwrap().is_empty());
        assert!(minterm_set(&empty, 1).unwrap().is_empty());
        assert!(matches!(minterm_set(&empty, 2), Err(Error::Usage(_))));
    }

    fn arb_spec() -> impl Strategy<Value = PlaSpec> {
        (1usize..=5, 1usize..=3).prop_flat_map(|(n, m)| {
            let lit = prop_oneof![Just(None), Just(Some(Bit::Zero)), Just(Some(Bit::One))];
            let out = prop_oneof![Just(Bit::Zero), Just(Bit::One)];
            let cube = (
                proptest::collection::vec(lit, n),
                proptest::collection::vec(out, m),
            )
                .prop_map(|(inputs, outputs)| Cube { inputs, outputs });
            proptest::collection::vec(cube, 0..8)
                .prop_map(move |cubes| PlaSpec::new(n, m, cubes).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trip_preserves_function(spec in arb_spec()) {
            let again = parse_pla(&spec.to_string()).unwrap();
            prop_assert_eq!(again.num_inputs(), spec.num_inputs());
            for w in 0..1u32 << spec.num_inputs() {
                prop_assert_eq!(again.eval_word(w).unwrap(), spec.eval_word(w).unwrap());
            }
        }

        #[test]
        fn minterms_agree_with_eval(spec in arb_spec()) {
            for j in 0..spec.num_outputs() {
                let set = minterm_set(&spec, j).unwrap();
                for w in 0..1u32 << spec.num_inputs() {
                    let bit = spec.eval_word(w).unwrap()[j];
                    prop_assert_eq!(bit.as_bool(), set.contains(&w));
                }
            }
        }

        #[test]
        fn parser_is_total(text in "[.io pe01\\-#x\n\r ]{0,60}") {
            // Either a spec or a diagnostic; never a panic.
            match parse_pla(&text) {
                Ok(_) | Err(Error::Format { .. }) => {}
                Err(other) => prop_assert!(false, "unexpected error kind {other:?}"),
            }
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures.

use revpla_core::{Bit, Cube, PlaSpec};

/// Deterministic `n`-input, `m`-output spec: output `j` is the parity of
/// the input word restricted to bits `0..=j`, written as one cube per
/// odd-parity assignment of those bits.
pub fn parity_spec(n: usize, m: usize) -> PlaSpec {
    let mut cubes = Vec::new();
    for j in 0..m {
        let width = (j % n) + 1;
        for w in 0u32..1 << width {
            if w.count_ones() % 2 == 0 {
                continue;
            }
            let inputs = (0..n)
                .map(|i| {
                    if i < width {
                        Some(Bit::from_bool((w >> (width - 1 - i)) & 1 == 1))
                    } else {
                        None
                    }
                })
                .collect();
            let outputs = (0..m).map(|k| Bit::from_bool(k == j)).collect();
            cubes.push(Cube { inputs, outputs });
        }
    }
    PlaSpec::new(n, m, cubes).expect("well-formed by construction")
}

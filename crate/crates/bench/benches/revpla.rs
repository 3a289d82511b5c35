// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use revpla_bench::parity_spec;
use revpla_core::{
    audit_reversibility, power_table, synthesize, verify_equivalence, CalibrationTable,
};

fn bench_synthesize(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    for n in [3usize, 6, 9] {
        let spec = parity_spec(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, spec| {
            b.iter(|| synthesize(black_box(spec)).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_equivalence");
    group.sample_size(20);
    for n in [3usize, 6, 9] {
        let spec = parity_spec(n, 4);
        let nl = synthesize(&spec).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(n),
            &(nl, spec),
            |b, (nl, spec)| b.iter(|| verify_equivalence(black_box(nl), spec).unwrap()),
        );
    }
    group.finish();
}

fn bench_audit(c: &mut Criterion) {
    let nl = synthesize(&parity_spec(8, 4)).unwrap();
    c.bench_function("audit_reversibility/8", |b| {
        b.iter(|| audit_reversibility(black_box(&nl)))
    });
}

fn bench_power_table(c: &mut Criterion) {
    let calib = CalibrationTable::table1();
    c.bench_function("power_table/table1", |b| {
        b.iter(|| power_table(3, black_box(&calib)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_synthesize,
    bench_verify,
    bench_audit,
    bench_power_table
);
criterion_main!(benches);

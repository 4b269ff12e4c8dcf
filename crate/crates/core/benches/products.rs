use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use parity_psi_core::complex::Complex;
use parity_psi_core::exec::{self, ExecMode};
use parity_psi_core::geometry::verify_chart;
use parity_psi_core::morph::UsageLedger;
use parity_psi_core::nearby::{bold_suite, NearbyKit};
use parity_psi_core::ring::BaseRing;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn square_condition(c: &mut Criterion) {
    let mut group = c.benchmark_group("square-condition");
    group.sample_size(10);
    for n in [6, 7, 8] {
        let z: Complex = NearbyKit::new(n, BaseRing::Integers).unwrap().z().unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &z, |b, z| {
                exec::set_mode(mode);
                b.iter(|| z.validate(&mut UsageLedger::new()).unwrap());
            });
        }
    }
    group.finish();
}

fn bold_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("bold-suite");
    group.sample_size(10);
    for n in [6, 8] {
        let kit = NearbyKit::new(n, BaseRing::Integers).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &kit, |b, kit| {
                exec::set_mode(mode);
                b.iter(|| assert!(bold_suite(kit).0.passed()));
            });
        }
    }
    group.finish();
}

fn chart_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("chart");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, 8), |b| {
            exec::set_mode(mode);
            b.iter(|| assert!(verify_chart(8).unwrap().0.passed()));
        });
    }
    group.finish();
}

criterion_group!(benches, square_condition, bold_identities, chart_identities);
criterion_main!(benches);

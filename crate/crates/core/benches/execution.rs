//! Sequential against data-parallel evaluation of the same sweeps.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qag_core::identity_engine::{
    multisum_series, sweep_cases, verify_all, EngineOptions, Identity, Params, SweepBounds,
};
use qag_core::Execution;

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let conj = sweep_cases(
        Identity::Conjecture,
        &Params { nu: Some(3), q: Some(20), ..Params::default() },
        &SweepBounds { mvec_box: Some(2), ..SweepBounds::default() },
    )
    .expect("valid sweep");
    let finite = sweep_cases(
        Identity::Variant2Finite,
        &Params { nu: Some(2), ..Params::default() },
        &SweepBounds { l_max: Some(8), ..SweepBounds::default() },
    )
    .expect("valid sweep");
    for (name, exec) in modes() {
        let opts = EngineOptions { exec, ..EngineOptions::default() };
        group.bench_with_input(BenchmarkId::new("conjecture-nu3", name), &conj, |b, cases| {
            b.iter(|| verify_all(black_box(cases), &opts).expect("sweep runs"))
        });
        group.bench_with_input(BenchmarkId::new("finite-variant-nu2", name), &finite, |b, cases| {
            b.iter(|| verify_all(black_box(cases), &opts).expect("sweep runs"))
        });
    }
    group.finish();
}

fn multisums(c: &mut Criterion) {
    let mut group = c.benchmark_group("multisum");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new("nu3-Q40", name), |b| {
            b.iter(|| multisum_series(3, black_box(&[-2, -1, 0]), 40, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps, multisums);
criterion_main!(benches);

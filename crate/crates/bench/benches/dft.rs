use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use circsym_core::{Complex64, DftPlan};

fn forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft_forward");
    // radix-2 next to nearby Bluestein lengths
    for n in [1000, 1024, 4095, 4096] {
        let plan = DftPlan::new(n).unwrap();
        let v: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new((j as f64).sin(), 0.0))
            .collect();
        group.bench_with_input(
            BenchmarkId::new(format!("{:?}", plan.strategy()), n),
            &n,
            |b, _| b.iter(|| plan.forward(black_box(&v)).unwrap()),
        );
    }
    group.finish();
}

fn plan_build(c: &mut Criterion) {
    c.bench_function("plan_new_1000", |b| {
        b.iter(|| DftPlan::new(black_box(1000)).unwrap())
    });
}

criterion_group!(benches, forward, plan_build);
criterion_main!(benches);

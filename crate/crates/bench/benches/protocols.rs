use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use obtsim_core::{
    chsh_quantum_exact, ot_from_nlbox, ot_via_quantum, run_trials_with_workers, teleport_via_nlbox,
    teleport_via_ot, Bit, BlochVector, Experiment, RandomSource, Transcript,
};

fn reductions(c: &mut Criterion) {
    let mut rng = RandomSource::new(42, 0);
    c.bench_function("ot_from_nlbox", |b| {
        b.iter(|| {
            let mut t = Transcript::new();
            ot_from_nlbox(black_box(Bit::ONE), Bit::ZERO, Bit::ONE, &mut rng, &mut t)
        })
    });
    c.bench_function("ot_via_quantum", |b| {
        b.iter(|| {
            let mut t = Transcript::new();
            ot_via_quantum(black_box(Bit::ONE), Bit::ZERO, Bit::ONE, &mut rng, &mut t)
        })
    });

    let v_a = BlochVector::PLUS_Z;
    let v_b = BlochVector::from_spherical(1.0, 0.5);
    c.bench_function("teleport_via_ot", |b| {
        b.iter(|| teleport_via_ot(black_box(&v_a), &v_b, &mut rng))
    });
    c.bench_function("teleport_via_nlbox", |b| {
        b.iter(|| teleport_via_nlbox(black_box(&v_a), &v_b, &mut rng))
    });
    c.bench_function("chsh_quantum_exact", |b| b.iter(chsh_quantum_exact));
}

fn estimation(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_trials");
    group.sample_size(10);
    for workers in [1usize, 4] {
        group.bench_with_input(
            BenchmarkId::new("ot-quantum/100k", workers),
            &workers,
            |b, &w| {
                b.iter(|| run_trials_with_workers(&Experiment::OtQuantum, 100_000, 7, w).unwrap())
            },
        );
    }
    group.finish();
}

criterion_group!(benches, reductions, estimation);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tjc_core::{
    concurrence, h2_integral, measures, phi_reduced, psi_reduced, xstate_concurrence, AtomicFamily,
    Family, OracleEvolver, ThermalSpec,
};

fn closed_forms(c: &mut Criterion) {
    let spec = ThermalSpec::new(5.9, 1e-12).unwrap();
    let mut group = c.benchmark_group("closed_form");
    group.bench_function("phi_reduced_nbar5.9", |b| {
        b.iter(|| phi_reduced(black_box(0.7), &spec, black_box(3.3)))
    });
    group.bench_function("psi_reduced_nbar5.9", |b| {
        b.iter(|| psi_reduced(black_box(0.7), &spec, black_box(3.3), 0.0))
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let spec = ThermalSpec::new(5.9, 1e-12).unwrap();
    let evolver = OracleEvolver::new(spec);
    let fam = AtomicFamily::new(Family::Psi, 0.7);
    let mut group = c.benchmark_group("oracle");
    group.bench_function("evolve_nbar5.9", |b| {
        b.iter(|| evolver.evolve(&fam, black_box(3.3)).unwrap())
    });
    group.bench_function("build_evolver_nbar5.9", |b| {
        b.iter(|| OracleEvolver::new(ThermalSpec::new(5.9, 1e-12).unwrap()))
    });
    group.finish();
}

fn entanglement(c: &mut Criterion) {
    let spec = ThermalSpec::new(0.64, 1e-12).unwrap();
    let rho = phi_reduced(0.4, &spec, 1.9);
    let mut group = c.benchmark_group("entanglement");
    group.bench_function("concurrence_spectrum", |b| {
        b.iter(|| concurrence(black_box(&rho)).unwrap())
    });
    group.bench_function("concurrence_xstate", |b| {
        b.iter(|| xstate_concurrence(black_box(&rho)).unwrap())
    });
    group.bench_function("measures_full", |b| {
        b.iter(|| measures(black_box(&rho)).unwrap())
    });
    group.finish();
}

fn abelplana(c: &mut Criterion) {
    let mut group = c.benchmark_group("abelplana");
    group.sample_size(30);
    group.bench_function("h2_integral_cold", |b| {
        b.iter(|| h2_integral(black_box(0.5), black_box(2.0)).unwrap())
    });
    group.bench_function("h2_integral_hot_late", |b| {
        b.iter(|| h2_integral(black_box(0.05), black_box(10.0)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, closed_forms, oracle, entanglement, abelplana);
criterion_main!(benches);

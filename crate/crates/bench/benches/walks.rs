use std::hint::black_box;

use cayleywalk::classical::{self, factorwise_generator, generator};
use cayleywalk::graphs::build;
use cayleywalk::linalg::hermitian_eigendecomposition;
use cayleywalk::mixing::instantaneous_mixing_search;
use cayleywalk::quantum::{self, hamiltonian};
use cayleywalk::{
    AmplitudeVector, Complex64, GeneratorConvention, GraphSpec, HamiltonianConvention,
    ProbabilityVector,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cycle_power(n: usize, d: usize) -> GraphSpec {
    GraphSpec::product(vec![GraphSpec::cycle(n); d])
}

fn eigendecomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigendecomposition");
    group.sample_size(10);
    for (n, d) in [(3, 3), (4, 3), (5, 3), (6, 3), (8, 3)] {
        let g = build(&cycle_power(n, d)).unwrap();
        let h = hamiltonian(&g, HamiltonianConvention::ProductAveraged).unwrap();
        group.bench_with_input(BenchmarkId::new("real", h.dim()), &h, |b, h| {
            b.iter(|| hermitian_eigendecomposition(black_box(h)).unwrap())
        });
    }
    for dim in [8, 16, 32] {
        let h = cayleywalk::ComplexMatrix::from_fn(dim, |i, j| {
            let x = (i.min(j) * 5 + i.max(j)) as f64;
            let im = if i < j {
                x.cos()
            } else if i > j {
                -x.cos()
            } else {
                0.0
            };
            Complex64::new(x.sin(), im)
        });
        group.bench_with_input(BenchmarkId::new("complex", dim), &h, |b, h| {
            b.iter(|| hermitian_eigendecomposition(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn expm_action(c: &mut Criterion) {
    let mut group = c.benchmark_group("expm_action");
    for (n, d) in [(4, 2), (5, 3), (6, 3)] {
        let g = build(&cycle_power(n, d)).unwrap();
        let h = hamiltonian(&g, HamiltonianConvention::ProductAveraged).unwrap();
        let spectrum = hermitian_eigendecomposition(&h).unwrap();
        let psi0 = AmplitudeVector::basis(h.dim(), 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(h.dim()), &psi0, |b, psi0| {
            b.iter(|| {
                spectrum
                    .expm_action(Complex64::new(0.0, -black_box(2.5)), psi0.as_slice())
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn product_versus_full(c: &mut Criterion) {
    let mut group = c.benchmark_group("product_versus_full");
    group.sample_size(10);
    let cases = [
        vec![
            GraphSpec::complete(3),
            GraphSpec::cycle(5),
            GraphSpec::complete(4),
        ],
        vec![
            GraphSpec::cycle(6),
            GraphSpec::cycle(4),
            GraphSpec::complete(5),
        ],
    ];
    for factors in cases {
        let graphs: Vec<_> = factors.iter().map(|f| build(f).unwrap()).collect();
        let full = build(&GraphSpec::product(factors.clone())).unwrap();
        let dim = full.vertex_count();

        let q_factors: Vec<_> = graphs
            .iter()
            .map(|g| {
                (
                    hamiltonian(g, HamiltonianConvention::NormalizedAdjacency).unwrap(),
                    AmplitudeVector::basis(g.vertex_count(), 0).unwrap(),
                )
            })
            .collect();
        let q_full = hamiltonian(&full, HamiltonianConvention::ProductAveraged).unwrap();
        let psi0 = AmplitudeVector::basis(dim, 0).unwrap();
        group.bench_function(BenchmarkId::new("quantum_product", dim), |b| {
            b.iter(|| quantum::evolve_product(&q_factors, black_box(5.0), true).unwrap())
        });
        group.bench_function(BenchmarkId::new("quantum_full", dim), |b| {
            b.iter(|| quantum::evolve(&q_full, &psi0, black_box(5.0)).unwrap())
        });

        let c_factors: Vec<_> = graphs
            .iter()
            .map(|g| {
                (
                    generator(g, GeneratorConvention::NormalizedLaplacian).unwrap(),
                    ProbabilityVector::point_mass(g.vertex_count(), 0).unwrap(),
                )
            })
            .collect();
        let c_full = factorwise_generator(&full, GeneratorConvention::NormalizedLaplacian).unwrap();
        let p0 = ProbabilityVector::point_mass(dim, 0).unwrap();
        group.bench_function(BenchmarkId::new("classical_product", dim), |b| {
            b.iter(|| classical::evolve_product(&c_factors, black_box(5.0)).unwrap())
        });
        group.bench_function(BenchmarkId::new("classical_full", dim), |b| {
            b.iter(|| classical::evolve(&c_full, &p0, black_box(5.0)).unwrap())
        });
    }
    group.finish();
}

fn mixing_search(c: &mut Criterion) {
    let g = build(&GraphSpec::cycle(5)).unwrap();
    let h = hamiltonian(&g, HamiltonianConvention::NormalizedAdjacency).unwrap();
    let psi0 = AmplitudeVector::basis(5, 0).unwrap();
    c.bench_function("mixing_search/C5/grid2000", |b| {
        b.iter(|| instantaneous_mixing_search(&h, &psi0, 200.0, black_box(2000), 1e-3).unwrap())
    });
}

criterion_group!(
    benches,
    eigendecomposition,
    expm_action,
    product_versus_full,
    mixing_search
);
criterion_main!(benches);

//! Benchmarks for the hot paths: Kronecker products, k-commutators,
//! matrixification and structure-constant extraction.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use manifold_matrix::{
    four_commutator, harmonic_basis, k_commutator, kronecker, matrix_structure_constants,
    matrixify, BracketKind, CMatrix, Manifold,
};

fn pseudo_random_matrix(dim: usize, salt: u64) -> CMatrix {
    // Cheap deterministic fill; quality is irrelevant for timing.
    let mut state = salt.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    CMatrix::from_fn(dim, dim, |_, _| Complex64::new(next(), next()))
}

fn bench_kronecker(c: &mut Criterion) {
    let mut g = c.benchmark_group("kronecker");
    for dim in [8usize, 16] {
        let a = pseudo_random_matrix(dim, 1);
        let b = pseudo_random_matrix(dim, 2);
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| kronecker(&a, &b));
        });
    }
    g.finish();
}

fn bench_four_commutator(c: &mut Criterion) {
    let mut g = c.benchmark_group("four_commutator");
    for dim in [8usize, 16, 32] {
        let mats: Vec<CMatrix> = (0..4).map(|k| pseudo_random_matrix(dim, k)).collect();
        g.bench_with_input(BenchmarkId::new("resolved", dim), &dim, |bench, _| {
            bench.iter(|| four_commutator(&mats[0], &mats[1], &mats[2], &mats[3]).unwrap());
        });
        let refs: Vec<&CMatrix> = mats.iter().collect();
        g.bench_with_input(BenchmarkId::new("brute_24_terms", dim), &dim, |bench, _| {
            bench.iter(|| k_commutator(&refs).unwrap());
        });
    }
    g.finish();
}

fn bench_matrixify(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrixify");
    g.sample_size(20);
    let basis = harmonic_basis(Manifold::S2, 4).unwrap();
    for n in [8usize, 16] {
        g.bench_with_input(BenchmarkId::new("s2_cutoff4", n), &n, |bench, &n| {
            bench.iter(|| matrixify(&basis, n).unwrap());
        });
    }
    g.finish();
}

fn bench_structure_constants(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrix_structure_constants");
    g.sample_size(10);
    let basis = harmonic_basis(Manifold::S2, 3).unwrap();
    let set = matrixify(&basis, 8).unwrap();
    g.bench_function("s2_cutoff3_n8_commutator2", |bench| {
        bench.iter(|| matrix_structure_constants(&set, BracketKind::Commutator2).unwrap());
    });
    let basis4 = harmonic_basis(Manifold::S4, 2).unwrap();
    let set4 = matrixify(&basis4, 6).unwrap();
    g.bench_function("s4_cutoff2_n6_nambu4", |bench| {
        bench.iter(|| matrix_structure_constants(&set4, BracketKind::Nambu4).unwrap());
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_kronecker,
    bench_four_commutator,
    bench_matrixify,
    bench_structure_constants
);
criterion_main!(benches);

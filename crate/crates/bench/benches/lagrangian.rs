use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hylag_core::constructions::{build_base, build_layered};
use hylag_core::sparse::build_sparse;
use hylag_core::{
    evaluate, gradient, maximize, ConstructionParams, FamilyChoice, OptimizerConfig, SparseParams,
    WeightVector,
};

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for t in [2, 3, 4] {
        let p = ConstructionParams::base(FamilyChoice::N12_125, 5, t).unwrap();
        let g = build_base(&p).unwrap();
        let x = WeightVector::uniform(g.n()).unwrap();
        group.bench_with_input(BenchmarkId::new("value", g.edge_count()), &g, |b, g| {
            b.iter(|| evaluate(black_box(g), black_box(&x)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("gradient", g.edge_count()), &g, |b, g| {
            b.iter(|| gradient(black_box(g), black_box(&x)).unwrap())
        });
    }
    group.finish();
}

fn optimizer(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximize");
    group.sample_size(10);
    let cfg = OptimizerConfig {
        restarts: 8,
        ..OptimizerConfig::default()
    };
    for (choice, ell, t) in [
        (FamilyChoice::Alpha, 2, 3),
        (FamilyChoice::N12_125, 5, 2),
        (FamilyChoice::Complement, 3, 2),
    ] {
        let g = build_base(&ConstructionParams::base(choice, ell, t).unwrap()).unwrap();
        let id = format!("{choice}_l{ell}_t{t}");
        group.bench_function(id, |b| b.iter(|| maximize(black_box(&g), &cfg).unwrap()));
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for q in [1, 2, 3] {
        let p = ConstructionParams::new(FamilyChoice::Alpha, 3, q, 3, 5).unwrap();
        group.bench_with_input(BenchmarkId::new("layered_alpha_l3_t3", q), &p, |b, p| {
            b.iter(|| build_layered(black_box(p)).unwrap())
        });
    }
    let sp = SparseParams::new(5, 12, 7, 0.002, 0);
    group.bench_function("sparse_r5_t12_k7", |b| {
        b.iter(|| build_sparse(black_box(&sp)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, evaluation, optimizer, constructions);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use edgereg::betti::{regularity, FieldChar};
use edgereg::ideals::{banerjee_colon, symbolic_power_oracle};
use edgereg::{closure_of_power, edge_ideal, Budget, Graph};
use edgereg_bench::{bow, power, wide_bicyclic};

fn regularity_of_powers(c: &mut Criterion) {
    let mut group = c.benchmark_group("regularity");
    group.sample_size(10);
    let b = Budget::generous();
    for s in 1..=3 {
        let i = power(&bow(), s);
        group.bench_with_input(BenchmarkId::new("bow", s), &i, |bench, i| {
            bench.iter(|| regularity(i, FieldChar::DEFAULT, &b).unwrap())
        });
    }
    let i = power(&wide_bicyclic(), 2);
    group.bench_function("bicyclic(1,2,3)^2", |bench| bench.iter(|| regularity(&i, FieldChar::DEFAULT, &b).unwrap()));
    group.finish();
}

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    let b = Budget::generous();
    let i = edge_ideal(&wide_bicyclic());
    for s in [3, 5] {
        group.bench_with_input(BenchmarkId::new("bicyclic(1,2,3)", s), &s, |bench, &s| {
            bench.iter(|| closure_of_power(&i, s, &b).unwrap())
        });
    }
    group.finish();
}

fn symbolic_and_colon(c: &mut Criterion) {
    let b = Budget::generous();
    let c7 = Graph::cycle(7);
    c.bench_function("symbolic C7^(4)", |bench| bench.iter(|| symbolic_power_oracle(&c7, 4, &b).unwrap()));
    let g = wide_bicyclic();
    let edges = g.edges();
    let chosen = [edges[0], edges[3]];
    c.bench_function("colon bicyclic(1,2,3) s=3", |bench| bench.iter(|| banerjee_colon(&g, 3, &chosen).unwrap()));
}

criterion_group!(benches, regularity_of_powers, closures, symbolic_and_colon);
criterion_main!(benches);

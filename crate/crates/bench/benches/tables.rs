use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dyckgrass_bench::{TABLE_SPACES, TOP_SPACE};
use dyckgrass_core::hecke::{build_tables, kl_tables, verify_szj};

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("kl_tables");
    group.sample_size(10);
    for &(n, i) in TABLE_SPACES {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}_{i}")),
            &(n, i),
            |b, &(n, i)| b.iter(|| build_tables(n, i).unwrap()),
        );
    }
    group.finish();
}

fn szj(c: &mut Criterion) {
    let (n, i) = TOP_SPACE;
    kl_tables(n, i).unwrap();
    let mut group = c.benchmark_group("verify_szj");
    group.sample_size(10);
    for parallel in [false, true] {
        let label = if parallel { "parallel" } else { "single" };
        group.bench_function(format!("{n}_{i}_{label}"), |b| {
            b.iter(|| verify_szj(n, i, parallel).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tables, szj);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fermat_syzygy::{
    covered_count_via_subgroups, covered_remainders, exceptional_degrees, prime_class_report,
};

fn bench_covered(c: &mut Criterion) {
    let mut group = c.benchmark_group("covered_remainders");
    for d in [167u64, 1999] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| covered_remainders(d))
        });
    }
    group.bench_function("subgroups_d1999", |b| {
        b.iter(|| covered_count_via_subgroups(1999))
    });
    group.finish();
}

fn bench_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("number_scans");
    group.sample_size(10);
    group.bench_function("exceptional_10k", |b| {
        b.iter(|| exceptional_degrees(10_000))
    });
    group.bench_function("prime_classes_d31_1e6", |b| {
        b.iter(|| prime_class_report(31, 1_000_000))
    });
    group.finish();
}

criterion_group!(benches, bench_covered, bench_scans);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fermat_syzygy::{
    delta_fermat, delta_fermat_exhaustive, strong_semistability_scan, FieldCtx,
    DEFAULT_COST_CEILING,
};
use fermat_syzygy_bench::{field, random_matrix};

fn bench_delta_fast_path(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_fermat");
    group.sample_size(20);
    let cases: [(u64, u64, u64); 3] = [(5, 7, 14), (5, 3, 54), (7, 13, 28)];
    for (d, p, a) in cases {
        let ctx = FieldCtx::new(p).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("d{}_p{}_a{}", d, p, a)),
            &(d, a),
            |b, &(d, a)| b.iter(|| delta_fermat(a, a, a, d, &ctx, None).unwrap()),
        );
    }
    group.finish();
}

fn bench_delta_exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_exhaustive");
    group.sample_size(10);
    let ctx = field(7);
    group.bench_function("d5_p7_a14", |b| {
        b.iter(|| delta_fermat_exhaustive(14, 14, 14, 5, &ctx, 20).unwrap())
    });
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("semistability_scan");
    group.sample_size(10);
    let ctx = field(11);
    group.bench_function("d5_p11_e2", |b| {
        b.iter(|| strong_semistability_scan(5, &ctx, 2, DEFAULT_COST_CEILING).unwrap())
    });
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_vector");
    group.sample_size(20);
    let ctx = field(31);
    for n in [40usize, 120] {
        let m = random_matrix(n, n + 1, 31, 0xfeed);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| m.kernel_vector(&ctx))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_delta_fast_path,
    bench_delta_exhaustive,
    bench_scan,
    bench_kernel
);
criterion_main!(benches);

use bindet::epsilon::{eps_limit_direct, eps_limit_ratio, eps_limit_syseps};
use bindet::families::{determinant, sum_of_minors};
use bindet_bench::{determinant_specs, eps_spec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("determinant");
    for spec in determinant_specs() {
        let label = format!("{}_{}_{}_n{}", spec.family, spec.s, spec.t, spec.n);
        g.bench_with_input(BenchmarkId::new("bareiss", &label), &spec, |b, s| b.iter(|| determinant(black_box(s)).unwrap()));
        if spec.n <= 8 {
            g.bench_with_input(BenchmarkId::new("sum_of_minors", &label), &spec, |b, s| b.iter(|| sum_of_minors(black_box(s)).unwrap()));
        }
    }
    g.finish();
}

fn eps_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("eps_limit");
    g.sample_size(10);
    for m in [2i64, 3] {
        let spec = eps_spec(m);
        g.bench_with_input(BenchmarkId::new("ratio", m), &spec, |b, s| b.iter(|| eps_limit_ratio(s).unwrap()));
        g.bench_with_input(BenchmarkId::new("direct", m), &spec, |b, s| b.iter(|| eps_limit_direct(s).unwrap()));
        g.bench_with_input(BenchmarkId::new("syseps", m), &spec, |b, s| b.iter(|| eps_limit_syseps(s).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, determinants, eps_routes);
criterion_main!(benches);

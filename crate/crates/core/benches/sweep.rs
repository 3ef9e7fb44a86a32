use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use omm_qcorr::sweep::{preset, run_sweep_with, Execution};

fn executors(c: &mut Criterion) {
    let mut group = c.benchmark_group("fig4_grid");
    group.sample_size(10);
    for n in [11, 21] {
        let spec = preset("fig4").unwrap().with_grid(n);
        for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, n * n), &spec, |b, spec| {
                b.iter(|| run_sweep_with(spec, exec, None).unwrap())
            });
        }
    }
    group.finish();
}

fn single_point(c: &mut Criterion) {
    let spec = preset("fig2d").unwrap().with_grid(2);
    c.bench_function("point_pipeline", |b| {
        b.iter(|| run_sweep_with(&spec, Execution::Sequential, None).unwrap())
    });
}

criterion_group!(benches, executors, single_point);
criterion_main!(benches);

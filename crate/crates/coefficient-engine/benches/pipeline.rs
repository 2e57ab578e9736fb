use coefficient_engine::observables::{F, G};
use coefficient_engine::Pipeline;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use tensor_algebra::exec::{self, Executor};

fn bench_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (name, mode) in [("sequential", Executor::Sequential), ("parallel", Executor::Parallel)] {
        exec::set(mode);
        group.bench_function(format!("build/{name}"), |b| b.iter(|| black_box(Pipeline::build())));
        let pl = Pipeline::build();
        group.bench_function(format!("b2fg/{name}"), |b| b.iter(|| black_box(pl.b_fg(F, G, 2))));
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);

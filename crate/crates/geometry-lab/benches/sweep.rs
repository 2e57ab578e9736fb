use criterion::{criterion_group, criterion_main, Criterion};
use geometry_lab::{par, run_checks, BergmanSpace, Cp1, NumericConfig, Observable, Torus};
use std::hint::black_box;

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let cfg = NumericConfig { pmin: 2, pmax: 20, order: None };
    let ids = vec!["cp1-density".to_string(), "cp1-height-toeplitz".to_string()];
    for (name, on) in [("sequential", false), ("parallel", true)] {
        par::set_parallel(on);
        group.bench_function(format!("cp1-checks/{name}"), |b| b.iter(|| black_box(run_checks(&Cp1, &cfg, &ids))));
        group.bench_function(format!("torus-toeplitz-p24/{name}"), |b| {
            b.iter(|| {
                let s = BergmanSpace::new(&Torus, 24).unwrap();
                black_box(s.toeplitz(&Observable::cos_xy()))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);

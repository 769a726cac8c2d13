use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gem_core::{
    build_problem, run_gem, sse_objective, EngineConfig, OdeParams, PresetSpec, RngStream,
    VibrationData,
};

fn bench_runs(c: &mut Criterion) {
    let preset = PresetSpec::standard();
    let config = EngineConfig::new(10, 1000);
    for name in ["f1", "f10", "pressure_vessel"] {
        let problem = build_problem(name, None, None).unwrap();
        c.bench_function(&format!("run_gem/{name}/n10_t1000"), |b| {
            b.iter(|| {
                let mut rng = RngStream::new(42);
                black_box(run_gem(&problem, &preset, &config, &mut rng).unwrap().best_value)
            })
        });
    }
}

fn bench_ode_objective(c: &mut Criterion) {
    let data = VibrationData::default();
    c.bench_function("sse_objective/dt0.01", |b| {
        b.iter(|| sse_objective(black_box(OdeParams::new(0.25, 2.0)), &data).unwrap())
    });
}

criterion_group!(benches, bench_runs, bench_ode_objective);
criterion_main!(benches);

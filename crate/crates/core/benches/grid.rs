use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ngstates_core::analysis::{sweep, Axis, Quantity};
use ngstates_core::exec::Exec;
use ngstates_core::quasiprob::quasiprob_grid_with;
use ngstates_core::{KappaOrder, PhaseGrid, Stage, StateSpec};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn wigner_grid(c: &mut Criterion) {
    let grid = PhaseGrid::square(-3.0, 3.0, 101).unwrap();
    let specs = [
        ("pats", StateSpec::Pats { n_th: 0.3, m: 2 }),
        ("pssts", StateSpec::Pssts { n_th: 0.2, m: 2, lambda: 0.3 }),
    ];
    let mut group = c.benchmark_group("wigner_grid_101x101");
    for (name, spec) in specs {
        for (label, exec) in EXECS {
            group.bench_with_input(BenchmarkId::new(name, label), &exec, |b, &exec| {
                b.iter(|| quasiprob_grid_with(&spec, Stage::Output { s: 0.3 }, KappaOrder::W, &grid, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn mandel_sweep(c: &mut Criterion) {
    let values: Vec<f64> = (0..=40).map(|i| 0.01 * i as f64).collect();
    let template = StateSpec::Pasts { n_th: 0.1, m: 1, lambda: 0.0 };
    let mut group = c.benchmark_group("mandel_q_sweep_lambda");
    for (label, exec) in EXECS {
        group.bench_function(label, |b| {
            b.iter(|| sweep(&template, Stage::Output { s: 0.5 }, Axis::Lambda, &values, Quantity::MandelQ, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, wigner_grid, mandel_sweep);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mbl_core::hamiltonian::ModelKind;
use mbl_core::harness::{run_sweep_with, RunConfig};
use mbl_core::parallel::Execution;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

fn config(rows: usize, cols: usize) -> RunConfig {
    let mut c = RunConfig::new(rows, cols, ModelKind::Quasixy, vec![1.0, 10.0], 16, 7);
    c.states = 20;
    c.bins = 20;
    c
}

fn sweep_execution(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (rows, cols) in [(2, 4), (2, 5)] {
        let cfg = config(rows, cols);
        let label = format!("{rows}x{cols}");
        for (name, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, &label), &cfg, |b, cfg| {
                b.iter(|| run_sweep_with(cfg, execution).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweep_execution);
criterion_main!(benches);

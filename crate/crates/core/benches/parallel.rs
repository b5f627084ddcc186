use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64 as C64;
use poisson_lab::exec::{map_slice, Execution};
use poisson_lab::potentials::{self, SourceFunction};
use poisson_lab::quadrature::DiskRule;
use poisson_lab::testbed::{self, BoundId, GridSpec, SweepOptions};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn green_grid(c: &mut Criterion) {
    let g = SourceFunction::new(|w| C64::new(1.0, 0.0) + w * w.conj());
    let points = GridSpec::new(8, 16).points();
    let mut group = c.benchmark_group("green_potential_grid");
    group.sample_size(10);
    for mode in MODES {
        let rule = DiskRule::new(96, 256).unwrap().with_execution(mode);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| map_slice(mode, &points, |&z| potentials::green_potential(&g, z, &rule).unwrap()))
        });
    }
    group.finish();
}

fn gradient_sweep(c: &mut Criterion) {
    let s = testbed::builtin("colonna-extremal:1,1,0").unwrap();
    let grid = GridSpec::new(32, 64);
    let mut group = c.benchmark_group("gradient_sweep");
    for mode in MODES {
        let opts = SweepOptions {
            execution: mode,
            ..SweepOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &opts, |b, opts| {
            b.iter(|| testbed::measure(&s, BoundId::Gradient, &grid, opts).unwrap())
        });
    }
    group.finish();
}

fn bilipschitz(c: &mut Criterion) {
    let s = testbed::builtin("landau-quadratic:0.25").unwrap();
    let mut group = c.benchmark_group("bilipschitz_probe");
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| testbed::bilipschitz_probe(&s, 0.05, 10_000, 1, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, green_grid, gradient_sweep, bilipschitz);
criterion_main!(benches);

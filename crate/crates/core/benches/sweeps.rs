use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nosig_secrecy::correlations::{decompose_chsh, isotropic};
use nosig_secrecy::figures::{rates_figure, slice_map, thresholds};
use nosig_secrecy::keyrate::{intrinsic_info_numeric, IntrinsicConfig, OptConfig};
use nosig_secrecy::parallel::Exec;
use nosig_secrecy::protocol::build_tripartite;
use nosig_secrecy::quantum::{optimize_schmidt, SchmidtSearch};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn bench_rates(c: &mut Criterion) {
    let cfg = OptConfig::default();
    let mut g = c.benchmark_group("rates_figure");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 151), &exec, |b, &exec| {
            b.iter(|| rates_figure(0.0, 0.15, black_box(151), &cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_slice_map(c: &mut Criterion) {
    let cfg = OptConfig::default();
    let mut g = c.benchmark_group("slice_map");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 30), &exec, |b, &exec| {
            b.iter(|| slice_map(black_box(30), &cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_thresholds(c: &mut Criterion) {
    let cfg = OptConfig::default();
    let mut g = c.benchmark_group("thresholds");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| thresholds(black_box(1e-6), &cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_intrinsic(c: &mut Criterion) {
    let t = build_tripartite(&decompose_chsh(&isotropic(0.3).unwrap()).unwrap()).unwrap();
    let mut g = c.benchmark_group("intrinsic_multistart");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = IntrinsicConfig {
            exec,
            ..IntrinsicConfig::default()
        };
        g.bench_function(name, |b| {
            b.iter(|| intrinsic_info_numeric(black_box(&t), &cfg))
        });
    }
    g.finish();
}

fn bench_schmidt(c: &mut Criterion) {
    let mut g = c.benchmark_group("optimize_schmidt");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SchmidtSearch {
            exec,
            ..SchmidtSearch::default()
        };
        g.bench_with_input(BenchmarkId::new(name, 6), &cfg, |b, cfg| {
            b.iter(|| optimize_schmidt(black_box(6), cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_rates,
    bench_slice_map,
    bench_thresholds,
    bench_intrinsic,
    bench_schmidt
);
criterion_main!(benches);

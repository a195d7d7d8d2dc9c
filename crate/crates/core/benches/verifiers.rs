use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use layersep::decomposition::Balance;
use layersep::drawing3d::{draw_from_tracks, verify_drawing};
use layersep::generators::{random_triangulation, Lcg};
use layersep::layouts::{verify_queue_layout, verify_track_layout};
use layersep::nonrep::verify_nonrepetitive;
use layersep::pipeline::embedded_run;
use layersep::Exec;

const SIZES: [usize; 3] = [100, 400, 1600];
const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn runs() -> Vec<(usize, layersep::pipeline::EmbeddedRun)> {
    SIZES
        .iter()
        .map(|&n| {
            let eg = random_triangulation(n, &mut Lcg::new(n as u64)).unwrap();
            (n, embedded_run(&eg, 0, Balance::TwoThirds).unwrap())
        })
        .collect()
}

fn tracks(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_track_layout");
    for (n, run) in runs() {
        let tl = run.tracks().unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &tl, |b, tl| {
                b.iter(|| verify_track_layout(&run.graph, tl, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn queues(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_queue_layout");
    for (n, run) in runs() {
        let (_, ql) = run.queues().unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &ql, |b, ql| {
                b.iter(|| verify_queue_layout(&run.graph, ql, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn drawings(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_drawing");
    group.sample_size(10);
    for (n, run) in runs() {
        let d = draw_from_tracks(&run.graph, &run.tracks().unwrap()).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &d, |b, d| {
                b.iter(|| verify_drawing(&run.graph, d, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn nonrep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_nonrepetitive");
    group.sample_size(10);
    for (n, run) in runs() {
        let col = run.colouring().unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &col, |b, col| {
                b.iter(|| verify_nonrepetitive(&run.graph, col, 10, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tracks, queues, drawings, nonrep);
criterion_main!(benches);

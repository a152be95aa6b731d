//! Sequential against data-parallel execution for the window-scale scans.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use inductive_rotation::analysis::{find_periods, repetitivity_radius};
use inductive_rotation::substitution::infer_rule_from;
use inductive_rotation::{ArrowedTiling, Exec, Window};

fn modes() -> Vec<(&'static str, Exec)> {
    let mut m = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        m.push(("parallel", Exec::Parallel));
    }
    m
}

fn limit_patch(c: &mut Criterion) {
    let mut g = c.benchmark_group("limit_patch");
    for (name, exec) in modes() {
        let t = ArrowedTiling::default().with_exec(exec);
        for r in [128i64, 512] {
            g.bench_with_input(BenchmarkId::new(name, r), &r, |b, &r| {
                b.iter(|| t.limit_patch(Window::square(r)))
            });
        }
    }
    g.finish();
}

fn periods(c: &mut Criterion) {
    let patch = ArrowedTiling::default().limit_patch(Window::square(128));
    let mut g = c.benchmark_group("find_periods");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(name, |b| b.iter(|| find_periods(&patch, 32, exec).unwrap()));
    }
    g.finish();
}

fn inference(c: &mut Criterion) {
    let patch = ArrowedTiling::default().limit_patch(Window::square(256));
    let mut g = c.benchmark_group("infer_rule");
    for (name, exec) in modes() {
        g.bench_function(name, |b| b.iter(|| infer_rule_from(&patch, Window::square(128), exec).unwrap()));
    }
    g.finish();
}

fn repetitivity(c: &mut Criterion) {
    let patch = ArrowedTiling::default().limit_patch(Window::square(128));
    let mut g = c.benchmark_group("repetitivity");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(name, |b| b.iter(|| repetitivity_radius(&patch, 4, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, limit_patch, periods, inference, repetitivity);
criterion_main!(benches);

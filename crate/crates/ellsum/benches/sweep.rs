use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ellsum::analytic::voronoi_residual;
use ellsum::catalog::catalog;
use ellsum::parallel::{map, sweep, Mode};
use ellsum::report::Grid;

fn modes() -> Vec<Mode> {
    if Mode::available() {
        vec![Mode::Sequential, Mode::Parallel]
    } else {
        vec![Mode::Sequential]
    }
}

fn catalog_sweep(c: &mut Criterion) {
    let ids: Vec<_> = catalog().iter().collect();
    let mut g = c.benchmark_group("catalog_sweep");
    g.sample_size(10);
    for grid in [Grid::Default, Grid::Dense] {
        let pts = grid.points();
        for mode in modes() {
            g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), grid.label()), &pts, |b, pts| {
                b.iter(|| sweep(&ids, pts, 5e-12, mode))
            });
        }
    }
    g.finish();
}

fn voronoi_points(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=16).map(|i| 0.5 + i as f64 * 0.25).collect();
    let mut g = c.benchmark_group("voronoi");
    g.sample_size(10);
    for mode in modes() {
        g.bench_function(format!("{mode:?}"), |b| {
            b.iter(|| map(&xs, mode, |&x| voronoi_residual(x, 4000).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, catalog_sweep, voronoi_points);
criterion_main!(benches);

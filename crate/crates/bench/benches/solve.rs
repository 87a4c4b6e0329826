use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dsa2d::solver::{uniform_angles, GridSpec};
use dsa2d::validation::cylinder_problem;
use dsa2d::Point;
use std::hint::black_box;

const FREQUENCY: f64 = 300e6;

fn assembly_and_solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("cylinder");
    g.sample_size(10);
    for mesh in [0.1, 0.05] {
        let problem = cylinder_problem(4.0, FREQUENCY, mesh).unwrap();
        let ops = problem.operator_sets().unwrap();
        g.bench_with_input(BenchmarkId::new("operators", mesh), &problem, |b, p| {
            b.iter(|| p.operator_sets().unwrap())
        });
        g.bench_with_input(BenchmarkId::new("solve_with_operators", mesh), &ops, |b, ops| {
            b.iter(|| problem.solve_with(black_box(ops)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("end_to_end", mesh), &problem, |b, p| b.iter(|| p.solve().unwrap()));
    }
    g.finish();
}

fn post_processing(c: &mut Criterion) {
    let solution = cylinder_problem(4.0, FREQUENCY, 0.05).unwrap().solve().unwrap();
    let points = GridSpec::square(Point::ORIGIN, 4.0, 0.1).points();
    let angles = uniform_angles(360);
    let mut g = c.benchmark_group("post");
    g.sample_size(10);
    g.bench_function("total_field_grid", |b| b.iter(|| solution.total_field(black_box(&points)).unwrap()));
    g.bench_function("rcs_360", |b| b.iter(|| solution.rcs(black_box(&angles))));
    g.finish();
}

criterion_group!(benches, assembly_and_solve, post_processing);
criterion_main!(benches);

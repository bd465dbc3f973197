use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use linecover::cover::{pi12_upper_search, two_parallel_lines, SearchSpace};
use linecover::geom::{min_line_cover, seg_classify, validate_drawing2, Point2};
use linecover::graph::{leveled_planar_search, make_spiral, make_stacked, Graph};
use linecover::planes3d::{random_two_plane, saturate, spine_stats, tight_construction};

fn geometry(c: &mut Criterion) {
    let p = [
        Point2::int(0, 0),
        Point2::int(7, 3),
        Point2::int(2, 5),
        Point2::int(4, -1),
    ];
    c.bench_function("seg_classify", |b| {
        b.iter(|| seg_classify(black_box(&p[0]), &p[1], &p[2], &p[3]))
    });

    let pts: Vec<Point2> = (0..9).map(|i| Point2::int(i % 3, (i * i) % 5)).collect();
    c.bench_function("min_line_cover/9", |b| {
        b.iter(|| min_line_cover(black_box(&pts)))
    });

    let spiral = make_spiral(6).unwrap();
    c.bench_function("validate_drawing2/spiral6", |b| {
        b.iter(|| validate_drawing2(&spiral.graph, black_box(&spiral.layout.drawing)))
    });
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("make_stacked");
    for d in [3usize, 5, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| make_stacked(d))
        });
    }
    group.finish();
    c.bench_function("make_spiral/12", |b| b.iter(|| make_spiral(black_box(12))));
}

fn searches(c: &mut Criterion) {
    let k4 = Graph::complete(4);
    let space = SearchSpace::default();
    c.bench_function("pi12_upper_search/K4", |b| {
        b.iter(|| pi12_upper_search(&k4, 2, &space))
    });
    let k24 = Graph::complete_bipartite(2, 4);
    c.bench_function("two_parallel_lines/K24", |b| {
        b.iter(|| two_parallel_lines(&k24))
    });
    let c6 = Graph::cycle(6);
    c.bench_function("leveled_planar_search/C6", |b| {
        b.iter(|| leveled_planar_search(&c6, 6))
    });
}

fn planes(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_planes");
    group.sample_size(20);
    for n in [12usize, 30] {
        group.bench_with_input(BenchmarkId::new("tight", n), &n, |b, &n| {
            b.iter(|| tight_construction(n))
        });
        let d = random_two_plane(n, 7).unwrap();
        group.bench_with_input(BenchmarkId::new("saturate", n), &d, |b, d| {
            b.iter(|| saturate(d))
        });
        group.bench_with_input(BenchmarkId::new("spine_stats", n), &d, |b, d| {
            b.iter(|| spine_stats(d))
        });
    }
    group.finish();
}

criterion_group!(benches, geometry, generators, searches, planes);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use lietruss::lie::{bracket_from_truss, validate_lie_truss, validate_strong_jacobi};
use lietruss::{ReportMode, TrussStructure};

fn jacobi(c: &mut Criterion) {
    let l = bracket_from_truss(&TrussStructure::ring_zn(27).unwrap());
    let mut g = c.benchmark_group("jacobi");
    g.sample_size(10);
    g.bench_function("strong_z27", |b| {
        b.iter(|| validate_strong_jacobi(black_box(&l), ReportMode::First).unwrap())
    });
    g.bench_function("lie_truss_z27", |b| {
        b.iter(|| validate_lie_truss(black_box(&l), ReportMode::First))
    });
    g.finish();
}

criterion_group!(benches, jacobi);
criterion_main!(benches);

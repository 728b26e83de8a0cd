use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spectra::circle::fourier_coefficients;
use spectra_bench::{circle_signal, group_signal};

fn group_ft(c: &mut Criterion) {
    let mut group = c.benchmark_group("group_ft");
    for factors in [vec![64], vec![4, 9], vec![2, 2, 2, 2, 2, 2], vec![8, 8, 8]] {
        let f = group_signal(&factors);
        let label = factors.iter().map(u64::to_string).collect::<Vec<_>>().join("x");
        group.bench_with_input(BenchmarkId::from_parameter(label), &f, |b, f| {
            b.iter(|| f.group().fourier_transform(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn circle(c: &mut Criterion) {
    let mut group = c.benchmark_group("circle_coefficients");
    for q in [64, 257, 1024] {
        let s = circle_signal(q);
        group.bench_with_input(BenchmarkId::from_parameter(q), &s, |b, s| {
            b.iter(|| fourier_coefficients(black_box(s), (q - 1) / 2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, group_ft, circle);
criterion_main!(benches);

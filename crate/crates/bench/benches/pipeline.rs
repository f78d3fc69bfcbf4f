use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};
use streamfold::{of, range};

const N: i64 = 1_000_000;

fn stage_overhead(c: &mut Criterion) {
    let mut group = c.benchmark_group("stages");
    group.throughput(Throughput::Elements(N as u64));
    group.bench_function("range_sum", |b| b.iter(|| range(0, black_box(N)).sum().unwrap()));
    group.bench_function("range_filter_map_sum", |b| {
        b.iter(|| {
            range(0, black_box(N))
                .filter(|x| x % 3 != 0)
                .unwrap()
                .map(|x| x * 2)
                .unwrap()
                .sum()
                .unwrap()
        })
    });
    group.bench_function("iterator_baseline", |b| {
        b.iter(|| (0..black_box(N)).filter(|x| x % 3 != 0).map(|x| x * 2).sum::<i64>())
    });
    group.bench_function("parallel_range_filter_map_sum", |b| {
        b.iter(|| {
            range(0, black_box(N))
                .parallel()
                .unwrap()
                .filter(|x| x % 3 != 0)
                .unwrap()
                .map(|x| x * 2)
                .unwrap()
                .sum()
                .unwrap()
        })
    });
    group.finish();
}

fn reduce_strings(c: &mut Criterion) {
    let words: Vec<String> = (0..10_000).map(|i| format!("word{i}")).collect();
    c.bench_function("reduce_first_chars", |b| {
        b.iter(|| {
            of(words.clone())
                .reduce(String::new(), |mut acc, w| {
                    acc.push_str(&w[..1]);
                    acc
                })
                .unwrap()
        })
    });
}

criterion_group!(benches, stage_overhead, reduce_strings);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use tropath::apc::{floyd_warshall_batch, min_sparse, sum_sparse};
use tropath::sparse::normalize;
use tropath::{Abb, Domain, SparseMatrix, Weight};
use tropath_bench::{random_blocks, random_sparse};

fn sparse_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("sum_sparse");
    for n in [16usize, 64, 128] {
        for domain in [Domain::Clear, Domain::Shared] {
            let mut abb = Abb::with_domain(domain);
            let x = random_sparse(&mut abb, n, 0.1, 1);
            let y = random_sparse(&mut abb, n, 0.1, 2);
            group.bench_with_input(BenchmarkId::new(domain.to_string(), n), &n, |b, _| {
                b.iter(|| sum_sparse(&mut abb, black_box(&x), black_box(&y)).unwrap())
            });
        }
    }
    group.finish();
}

fn pointwise_min(c: &mut Criterion) {
    let mut abb = Abb::clear();
    let x = random_sparse(&mut abb, 128, 0.2, 3);
    let y = random_sparse(&mut abb, 128, 0.2, 4);
    c.bench_function("min_sparse/128", |b| {
        b.iter(|| min_sparse(&mut abb, black_box(&x), black_box(&y)).unwrap())
    });
}

fn dedupe(c: &mut Criterion) {
    let mut abb = Abb::clear();
    let entries: Vec<(usize, usize, Weight)> = (0..20_000)
        .map(|i| ((i * 7919) % 100, (i * 104_729) % 100, Weight::new(i as u64 % 97)))
        .collect();
    let raw = SparseMatrix::from_triplets(&mut abb, 100, 100, &entries).unwrap();
    c.bench_function("normalize/20000", |b| b.iter(|| normalize(&mut abb, black_box(&raw)).unwrap()));
}

fn batched_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("floyd_warshall_batch");
    for count in [1usize, 16, 64] {
        let mut abb = Abb::shared();
        let blocks = random_blocks(&mut abb, count, 8, 5);
        group.bench_with_input(BenchmarkId::new("8x8 blocks", count), &count, |b, _| {
            b.iter(|| floyd_warshall_batch(&mut abb, black_box(&blocks)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sparse_product, pointwise_min, dedupe, batched_closure);
criterion_main!(benches);

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use transfer_core::{
    chain, divisor_lattice, enumerate_transfer_systems, enumerate_trees, OrderKind, SystemCatalog,
};

fn transfer_systems(c: &mut Criterion) {
    let l6 = Arc::new(chain(6));
    c.bench_function("enumerate Tr([6])", |b| b.iter(|| enumerate_transfer_systems(black_box(&l6))));
    let d12 = Arc::new(divisor_lattice(12).0);
    c.bench_function("enumerate Tr(D12)", |b| b.iter(|| enumerate_transfer_systems(black_box(&d12))));
}

fn orders(c: &mut Criterion) {
    let catalog = SystemCatalog::new(Arc::new(chain(4)));
    c.bench_function("classify pairs on [4]", |b| b.iter(|| catalog.classify_all()));
    c.bench_function("cc order on [4]", |b| {
        b.iter(|| catalog.order_poset(OrderKind::CompositionClosed).unwrap())
    });
}

fn trees(c: &mut Criterion) {
    c.bench_function("enumerate trees m=6", |b| b.iter(|| enumerate_trees(black_box(6))));
}

criterion_group!(benches, transfer_systems, orders, trees);
criterion_main!(benches);

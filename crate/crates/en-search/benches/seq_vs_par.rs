//! Sequential vs parallel lanes of the shell scans. Run with the default
//! features to get both; `--no-default-features` leaves only the
//! sequential lane.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use en_core::EnSystem;
use en_search::{check_psi_seq, solve_in_order_seq};

fn psi_dimension_two(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_psi_n2");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| black_box(check_psi_seq(2, black_box(64))))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| black_box(en_search::check_psi_par(2, black_box(64))))
    });
    group.finish();
}

fn solve_insolvable(c: &mut Criterion) {
    // No solution below the cap, so every shell is scanned in full.
    let system = EnSystem::parse("n 3\nx1 + x2 = x3\nx1 * x2 = x3\nx1 = 1\nx2 + x2 = x1\n")
        .expect("valid system");
    let mut group = c.benchmark_group("solve_shells_n3");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| black_box(solve_in_order_seq(&system, black_box(24))))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| black_box(en_search::solve_in_order_par(&system, black_box(24))))
    });
    group.finish();
}

criterion_group!(benches, psi_dimension_two, solve_insolvable);
criterion_main!(benches);

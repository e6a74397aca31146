use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ulat_core::lattice::{check_distributive_with, verify_composition_law_with, Lattice};
use ulat_core::par::Exec;
use ulat_core::spaces::TableLattice;

fn modes() -> Vec<(&'static str, Exec)> {
    let mut out = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", Exec::Parallel));
    out
}

fn composition_law(c: &mut Criterion) {
    let mut group = c.benchmark_group("composition_law");
    group.sample_size(10);
    for n in [3, 4] {
        let l = TableLattice::powerset(n);
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, l.name()), &l, |b, l| {
                b.iter(|| black_box(verify_composition_law_with(l, exec)))
            });
        }
    }
    group.finish();
}

fn distributivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("distributivity");
    for l in [TableLattice::powerset(4), TableLattice::divisors(360)] {
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, l.name()), &l, |b, l| {
                b.iter(|| black_box(check_distributive_with(l, exec)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, composition_law, distributivity);
criterion_main!(benches);

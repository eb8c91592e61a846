use cliffzeta::corpus;
use cliffzeta::zeta::tower::family_member;
use cliffzeta::zeta::{assemble, assemble_twist, zeta_direct, Family};
use cliffzeta::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble");
    group.sample_size(10);
    let cases = [
        ("H3:C3/G", corpus::extension("H3:C3", "G").unwrap()),
        ("C3^2:Q8/C3xC3", corpus::extension("C3^2:Q8", "C3xC3").unwrap()),
        ("Heisenberg(Z/9)/A", family_member(Family::Heisenberg, 3, 2).unwrap()),
    ];
    for (name, ext) in &cases {
        for (label, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(label, name), ext, |b, ext| {
                b.iter(|| black_box(assemble(ext, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn twist_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_twist");
    group.sample_size(10);
    let ext = family_member(Family::Heisenberg, 3, 2).unwrap();
    for (label, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(label, "Heisenberg(Z/9)/A"), |b| {
            b.iter(|| black_box(assemble_twist(&ext, exec).unwrap()))
        });
    }
    group.finish();
}

fn direct(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta_direct");
    group.sample_size(10);
    let g = corpus::group("C3^2:Q8").unwrap();
    for (label, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(label, "C3^2:Q8"), |b| b.iter(|| black_box(zeta_direct(&g, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, assembly, twist_assembly, direct);
criterion_main!(benches);

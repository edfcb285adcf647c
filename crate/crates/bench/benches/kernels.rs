use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nichols::tensor::{hilbert_report, is_zero_in_nichols, Precision};
use nichols::{classify_pipeline, classify_theorem_roots, CyclotomicNumber, Limits, RootVectorContext};
use nichols_bench::{fixtures, scan_triples};

fn pipeline(c: &mut Criterion) {
    let limits = Limits {
        exact_witnesses: false,
        ..Limits::default()
    };
    for (name, br) in fixtures() {
        c.bench_function(&format!("classify_pipeline/{name}"), |b| {
            b.iter(|| classify_pipeline(black_box(&br), limits))
        });
    }
}

fn literal_scan(c: &mut Criterion) {
    c.bench_function("classify_theorem/mu_24", |b| {
        b.iter(|| scan_triples(24).filter(|[q, r, s]| !classify_theorem_roots(*q, *r, *s).labels.is_empty()).count())
    });
}

fn dimensions(c: &mut Criterion) {
    let mut g = c.benchmark_group("hilbert_report");
    g.sample_size(10);
    for (name, br) in fixtures().into_iter().take(3) {
        let br = Arc::new(br);
        for precision in [Precision::Exact, Precision::Modular] {
            g.bench_function(format!("{name}/{precision:?}/8"), |b| {
                b.iter(|| hilbert_report(&br, 8, 8, precision).expect("within the cutoff"))
            });
        }
    }
    g.finish();
}

fn zero_test(c: &mut Criterion) {
    let (_, br) = fixtures().swap_remove(3);
    let br = Arc::new(br);
    let mut ctx = RootVectorContext::new(&br);
    let w = ctx.w(2).expect("w_2 exists");
    c.bench_function("is_zero_in_nichols/w_2", |b| b.iter(|| is_zero_in_nichols(black_box(&w))));
}

fn field(c: &mut Criterion) {
    let x = CyclotomicNumber::root(1, 60) + CyclotomicNumber::root(7, 60) + CyclotomicNumber::from_integer(3);
    let y = CyclotomicNumber::root(11, 60) - CyclotomicNumber::root(2, 15);
    c.bench_function("cyclotomic/mul_60", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("cyclotomic/inverse_60", |b| b.iter(|| black_box(&x).inverse()));
}

criterion_group!(benches, pipeline, literal_scan, dimensions, zero_test, field);
criterion_main!(benches);

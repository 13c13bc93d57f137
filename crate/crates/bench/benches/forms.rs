use comalg::analysis::{newton_idempotents, sect_extremize};
use comalg::constructions::{herm0, Level};
use comalg_bench::{albert_traceless, simplicial_q};
use criterion::{criterion_group, criterion_main, Criterion};

fn trace_forms(c: &mut Criterion) {
    let e6 = simplicial_q(6);
    c.bench_function("killing ealg(6) rational", |b| b.iter(|| e6.algebra.killing()));
    c.bench_function("ricci ealg(6) rational", |b| b.iter(|| e6.algebra.ricci()));
    let h0 = albert_traceless();
    c.bench_function("killing herm0(3,O) rational", |b| b.iter(|| h0.algebra.killing()));
}

fn searches(c: &mut Criterion) {
    let e4 = simplicial_q(4).to_float();
    c.bench_function("newton ealg(4) 200 trials", |b| b.iter(|| newton_idempotents(&e4, 200, 1).unwrap()));
    let h = herm0::<f64>(3, Level::Real).unwrap();
    c.bench_function("sect extremize herm0(3,R)", |b| b.iter(|| sect_extremize(&h, 200, 50, 1).unwrap()));
}

criterion_group!(benches, trace_forms, searches);
criterion_main!(benches);

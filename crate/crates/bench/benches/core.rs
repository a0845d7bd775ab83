use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use arity_core::cat::{enumerate_functors, enumerate_set_functors, examples};
use arity_core::effects::{
    all_decurried, enumerate_store_terms, normalize_store_term, state_factorize, Store, DEFAULT_STEP_BUDGET,
};
use arity_core::freecat::{arity_factorize, enumerate_path_morphisms, Graph};
use arity_core::globular::{pd_compose, ColumnLabel, Pd2};
use arity_core::kan::lan_functor;
use arity_core::operad::{monad_iso_check, projection_operad};
use arity_core::simplicial::{categorify, enumerate_monotone, nerve, normal_form, segal_check};

fn simplicial(c: &mut Criterion) {
    let maps = enumerate_monotone(6, 6);
    c.bench_function("normal_form/[6]->[6]", |b| {
        b.iter(|| maps.iter().map(|f| normal_form(black_box(f)).deltas.len()).sum::<usize>())
    });
    let cat = examples::linear_order(5);
    c.bench_function("nerve+segal/chain(5), N=4", |b| {
        b.iter(|| {
            let x = nerve(black_box(&cat), 4);
            segal_check(&x).holds
        })
    });
    let x = nerve(&cat, 3);
    c.bench_function("categorify/chain(5)", |b| b.iter(|| categorify(black_box(&x)).unwrap().num_arrows()));
}

fn kan(c: &mut Criterion) {
    let src = Arc::new(examples::arrow_category());
    let tgt = Arc::new(examples::linear_order(4));
    let functors = enumerate_functors(&src, &tgt);
    let diagrams = enumerate_set_functors(&src, 3);
    c.bench_function("lan_functor/arrow->chain(4), carriers<=3", |b| {
        b.iter(|| {
            let mut total = 0;
            for i in &functors {
                for f in &diagrams {
                    total += lan_functor(f, i).unwrap().1.len();
                }
            }
            total
        })
    });
}

fn arities(c: &mut Criterion) {
    let g = Graph::linear_quiver(5);
    let arrows = enumerate_path_morphisms(&Graph::linear_quiver(3), &g, 5);
    c.bench_function("arity_factorize/[3]->T[5]", |b| {
        b.iter(|| arrows.iter().map(|h| arity_factorize(&g, h).unwrap().p).sum::<usize>())
    });
    let outer = Pd2::new(vec![2, 1, 0]);
    let labels = [
        ColumnLabel::Cells(vec![Pd2::new(vec![0, 0]), Pd2::new(vec![1, 2])]),
        ColumnLabel::Cells(vec![Pd2::new(vec![0, 2])]),
        ColumnLabel::Bare(2),
    ];
    c.bench_function("pd_compose/worked", |b| b.iter(|| pd_compose(black_box(&outer), black_box(&labels)).unwrap()));
}

fn effects(c: &mut Criterion) {
    let store = Store::new(2, 2);
    let terms = enumerate_store_terms(store, 2, 2);
    c.bench_function("normalize_store_term/depth<=2, |L|=|V|=2", |b| {
        b.iter(|| terms.iter().map(|t| normalize_store_term(t, store, 2, DEFAULT_STEP_BUDGET).unwrap().depth()).sum::<usize>())
    });
    let maps: Vec<_> = all_decurried(2, 2, 3).collect();
    c.bench_function("state_factorize/|S|=2, n=2, |a|=3", |b| {
        b.iter(|| maps.iter().map(|h| state_factorize(h).p).sum::<usize>())
    });
    let op = projection_operad(3).unwrap();
    c.bench_function("monad_iso_check/projection(3)", |b| b.iter(|| monad_iso_check(&op, &[0, 1, 2], 3).holds));
}

criterion_group!(benches, simplicial, kan, arities, effects);
criterion_main!(benches);

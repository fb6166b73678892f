use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rpog_core::corpus::precrossed_corpus;
use rpog_core::finite::catalog::{dihedral, rpo_by_name, symmetric};
use rpog_core::finite::enumerate::{enumerate_cones, homomorphisms};
use rpog_core::internal::{brute_force_compositions, is_internal_category, pxmod_to_graph};
use rpog_core::quasivariety::{check_axioms, to_model};
use rpog_core::schreier::check_action_rep;
use rpog_core::subobjects::{check_modular, normal_lattice};

fn finite_core(c: &mut Criterion) {
    let s4 = symmetric(4);
    c.bench_function("enumerate_cones S4", |b| b.iter(|| enumerate_cones(black_box(&s4))));
    let d6 = dihedral(6);
    c.bench_function("homomorphisms D6 -> S4", |b| b.iter(|| homomorphisms(black_box(&d6), &s4)));
}

fn quasivariety(c: &mut Criterion) {
    let g = rpo_by_name("S4_A4").unwrap();
    c.bench_function("check_axioms (S4,A4)", |b| b.iter(|| check_axioms(&to_model(black_box(&g)))));
    c.bench_function("modular (S4,A4)", |b| b.iter(|| check_modular(&normal_lattice(black_box(&g)).tables)));
}

fn schreier(c: &mut Criterion) {
    let x = rpo_by_name("C2xC2").unwrap();
    let y = rpo_by_name("C3_full").unwrap();
    c.bench_function("check_action_rep V4 C3", |b| b.iter(|| check_action_rep(black_box(&x), &y).unwrap()));
}

fn internal(c: &mut Criterion) {
    let graphs: Vec<_> = precrossed_corpus(8).iter().map(|p| pxmod_to_graph(p).unwrap()).collect();
    c.bench_function("is_internal_category corpus(8)", |b| {
        b.iter(|| graphs.iter().filter(|g| is_internal_category(g).holds).count())
    });
    let g = &graphs[graphs.len() / 2];
    c.bench_function("brute_force_compositions", |b| b.iter(|| brute_force_compositions(black_box(g))));
}

criterion_group!(benches, finite_core, quasivariety, schreier, internal);
criterion_main!(benches);

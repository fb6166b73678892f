use std::sync::Arc;

use proptest::prelude::*;
use rpog_core::corpus::rpo_groups;
use rpog_core::finite::catalog::{cyclic, rpo_by_name, symmetric, symmetric_index};
use rpog_core::finite::enumerate::{automorphisms, enumerate_cones, find_isomorphism, monotone_automorphisms, subgroups};
use rpog_core::finite::perm;
use rpog_core::quasivariety::{check_axioms, from_model, to_model};
use rpog_core::subobjects::{check_lattice_iso, check_modular, normal_lattice};
use rpog_core::{Cone, FiniteGroup, FiniteRpoGroup, RpoMorphism};

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

fn c2(cone: &[usize]) -> Arc<FiniteRpoGroup> {
    Arc::new(FiniteRpoGroup::new("C2", cyclic(2), cone).unwrap())
}

#[test]
fn swapped_entry_breaks_associativity() {
    let mut rows = symmetric(4).rows();
    rows[3].swap(5, 6);
    let g = FiniteGroup::from_rows(&rows).unwrap();
    let w = g.law_violation().expect("not a group");
    assert_eq!(w.law, "associativity");
    let idx = |k: &str| w.get(k).unwrap().parse::<usize>().unwrap();
    let (a, b, c) = (idx("a"), idx("b"), idx("c"));
    assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
}

#[test]
fn sign_map_is_a_morphism_and_its_kernel_is_a4() {
    let s4 = rpo_by_name("S4_A4").unwrap();
    let sign: Vec<usize> = perm::all(4).iter().map(|p| inversions(p) % 2).collect();
    let f = RpoMorphism::new(s4.clone(), c2(&[0]), sign.clone()).unwrap();
    assert!(f.check().holds);

    let (k, inc) = f.kernel();
    assert_eq!(k.order(), 12);
    assert_eq!(k.cone().len(), 12);
    assert!(inc.map().iter().all(|&a| sign[a] == 0));
    assert!(inc.is_normal_mono().unwrap().holds);
}

#[test]
fn transposition_inclusion_is_not_monotone() {
    let s4 = rpo_by_name("S4_A4").unwrap();
    let t = symmetric_index("(12)", 4).unwrap();
    assert_eq!(inversions(&perm::all(4)[t]) % 2, 1);
    let f = RpoMorphism::new(c2(&[0, 1]), s4, vec![0, t]).unwrap();
    let v = f.check();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert_eq!(w.law, "monotonicity");
    assert_eq!(w.get("f(p)"), Some("(12)"));
}

#[test]
fn trivial_kernels() {
    let s4 = rpo_by_name("S4_A4").unwrap();
    let (k, _) = RpoMorphism::identity(s4.clone()).kernel();
    assert_eq!(k.order(), 1);
    let (k, _) = RpoMorphism::zero(s4.clone(), c2(&[0])).kernel();
    assert_eq!(k.order(), 24);
    assert_eq!(k.cone().len(), 12);
}

#[test]
fn finite_ideal_determined_failure() {
    let f = RpoMorphism::new(c2(&[0]), c2(&[0, 1]), vec![0, 1]).unwrap();
    assert!(f.check().holds);
    let v = f.is_normal_mono().unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness.unwrap().get("a"), Some("1"));
}

#[test]
fn transposition_subgroup_is_not_normal() {
    let s4 = rpo_by_name("S4_A4").unwrap();
    let t = symmetric_index("(12)", 4).unwrap();
    let f = RpoMorphism::new(c2(&[0]), s4, vec![0, t]).unwrap();
    let v = f.is_normal_mono().unwrap();
    assert_eq!(v.witness.unwrap().law, "normal-image");
}

#[test]
fn small_enumerations() {
    assert_eq!(enumerate_cones(&cyclic(2)).len(), 2);
    assert_eq!(enumerate_cones(&cyclic(1)).len(), 1);
    assert_eq!(subgroups(&symmetric(3)).len(), 6);
    assert_eq!(automorphisms(&cyclic(3)).len(), 2);

    let v4 = cyclic(2).product(&cyclic(2));
    assert_eq!(automorphisms(&v4).len(), 6);
    let a = 1;
    let g = FiniteRpoGroup::new("V4", v4, &[0, a]).unwrap();
    let m = monotone_automorphisms(&g);
    assert_eq!(m.len(), 2);
    assert!(m.iter().all(|f| f[a] == a));
}

#[test]
fn s4_a4_lattice() {
    let g = rpo_by_name("S4_A4").unwrap();
    let lat = normal_lattice(&g);
    let mut sizes: Vec<(usize, usize)> = lat.elements.iter().map(|n| (n.order(), n.cone().count())).collect();
    sizes.sort();
    assert_eq!(sizes, vec![(1, 1), (4, 4), (12, 12), (24, 12)]);
    assert!(check_modular(&lat.tables).holds);
    assert!(check_lattice_iso(&g).holds);
}

fn corpus() -> Vec<Arc<FiniteRpoGroup>> {
    rpo_groups(8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_submonoids_are_cones(i in 0usize..1000, picks in proptest::collection::vec(0usize..64, 0..4)) {
        let gs = corpus();
        let g = gs[i % gs.len()].group().clone();
        let seed: Vec<usize> = picks.iter().map(|&p| p % g.order()).collect();
        let sub = g.generate(seed);
        prop_assert!(g.is_submonoid(&sub));
        for a in sub.iter() {
            prop_assert!(sub.contains(g.neg(a)));
        }
        let rpo = FiniteRpoGroup::from_parts("g", g, Cone::new(sub));
        prop_assert!(rpo.validate().holds);
    }

    #[test]
    fn model_round_trip(i in 0usize..1000) {
        let gs = corpus();
        let g = &gs[i % gs.len()];
        let m = to_model(g);
        prop_assert!(check_axioms(&m).all_hold());
        let back = from_model(&m).unwrap();
        prop_assert!(find_isomorphism(g, &back).is_some());
    }

    #[test]
    fn normal_lattices_are_modular(i in 0usize..1000) {
        let gs = rpo_groups(12);
        let g = &gs[i % gs.len()];
        prop_assert!(check_modular(&normal_lattice(g).tables).holds);
    }
}

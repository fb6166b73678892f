//! Exhaustive finite corpora and the census.
//!
//! Every group comes from the catalog (one per isomorphism class up to
//! order 15) and is paired with every cone.

use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::catalog::{groups_up_to, MAX_CATALOG_ORDER};
use crate::finite::enumerate::{enumerate_cones, for_each_hom, homomorphisms, normal_subgroups};
use crate::finite::rpo::{FiniteRpoGroup, RpoMorphism};
use crate::internal::{full_verdict, PrecrossedModule, ReflexiveGraph};
use crate::schreier::{action_of, aut_rpo, is_schreier, SplitPoint};
use crate::subobjects::EffEqRelation;

fn cone_label(g: &FiniteRpoGroup) -> String {
    let members: Vec<String> = g.cone().iter().map(|a| g.label(a)).collect();
    format!("{{{}}}", members.join(","))
}

/// Every catalog group of order `<= max_order` with every cone.
pub fn rpo_groups(max_order: usize) -> Vec<Arc<FiniteRpoGroup>> {
    groups_up_to(max_order)
        .into_iter()
        .flat_map(|entry| {
            enumerate_cones(&entry.group).into_iter().map(move |cone| {
                let g = FiniteRpoGroup::from_parts(entry.name, entry.group.clone(), cone);
                let name = format!("({},{})", entry.name, cone_label(&g));
                Arc::new(g.renamed(name))
            })
        })
        .collect()
}

/// Monotone group homomorphisms `a -> b`.
pub fn monotone_homs(a: &FiniteRpoGroup, b: &FiniteRpoGroup, injective: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _: Option<()> = for_each_hom(a.group(), b.group(), injective, |f| {
        if a.cone().iter().all(|p| b.is_positive(f[p])) {
            out.push(f.to_vec());
        }
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Monotone homs `a -> b` as morphisms.
pub fn morphisms(a: &Arc<FiniteRpoGroup>, b: &Arc<FiniteRpoGroup>) -> Vec<RpoMorphism> {
    monotone_homs(a, b, false)
        .into_iter()
        .map(|f| RpoMorphism::new(a.clone(), b.clone(), f).expect("well-formed"))
        .collect()
}

/// For each section `e: base -> total`, the retractions `d` with `d∘e = id`.
fn sections(total: &Arc<FiniteRpoGroup>, base: &Arc<FiniteRpoGroup>) -> Vec<(RpoMorphism, Vec<RpoMorphism>)> {
    if !total.order().is_multiple_of(base.order()) {
        return Vec::new();
    }
    let ds = morphisms(total, base);
    monotone_homs(base, total, true)
        .into_iter()
        .map(|e| {
            let e = RpoMorphism::new(base.clone(), total.clone(), e).expect("well-formed");
            let retractions = ds
                .iter()
                .filter(|d| base.group().elements().all(|x| d.apply(e.apply(x)) == x))
                .cloned()
                .collect();
            (e, retractions)
        })
        .collect()
}

/// All points `(d, e)` with the given total and base.
pub fn points(total: &Arc<FiniteRpoGroup>, base: &Arc<FiniteRpoGroup>) -> Vec<SplitPoint> {
    sections(total, base)
        .into_iter()
        .flat_map(|(e, ds)| ds.into_iter().map(move |d| SplitPoint::new(d, e.clone()).expect("split")))
        .collect()
}

/// All reflexive graphs `(d, c, e)` with the given apex and base.
pub fn graphs(apex: &Arc<FiniteRpoGroup>, base: &Arc<FiniteRpoGroup>) -> Vec<ReflexiveGraph> {
    let mut out = Vec::new();
    for (e, ds) in sections(apex, base) {
        for d in &ds {
            for c in &ds {
                out.push(ReflexiveGraph::new(d.clone(), c.clone(), e.clone()).expect("reflexive"));
            }
        }
    }
    out
}

/// All points whose total has order `<= max_order`, over every base in the corpus.
pub fn point_corpus(max_order: usize) -> Vec<SplitPoint> {
    let objs = rpo_groups(max_order);
    objs.par_iter()
        .flat_map_iter(|t| objs.iter().flat_map(|b| points(t, b)).collect::<Vec<_>>())
        .collect()
}

/// All reflexive graphs whose apex has order `<= max_order`.
pub fn graph_corpus(max_order: usize) -> Vec<ReflexiveGraph> {
    let objs = rpo_groups(max_order);
    objs.par_iter()
        .flat_map_iter(|t| objs.iter().flat_map(|b| graphs(t, b)).collect::<Vec<_>>())
        .collect()
}

/// All S-precrossed modules with `|ker| · |base| <= max_product`.
pub fn precrossed_corpus(max_product: usize) -> Vec<PrecrossedModule> {
    let objs = rpo_groups(max_product);
    let pairs: Vec<(&Arc<FiniteRpoGroup>, &Arc<FiniteRpoGroup>)> = objs
        .iter()
        .flat_map(|k| objs.iter().map(move |x| (k, x)))
        .filter(|(k, x)| k.order() * x.order() <= max_product)
        .collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(k, x)| {
            let aut = aut_rpo(k);
            let actions = monotone_homs(x, &aut.rpo, false);
            let boundaries = morphisms(k, x);
            let mut out = Vec::new();
            for mu in &actions {
                let action = action_of(&aut, k.clone(), x.clone(), mu);
                for b in &boundaries {
                    if let Ok(px) = PrecrossedModule::new(b.clone(), action.clone()) {
                        out.push(px);
                    }
                }
            }
            out
        })
        .collect()
}

/// One effective relation per normal subgroup.
pub fn effective_relations(g: &Arc<FiniteRpoGroup>) -> Vec<EffEqRelation> {
    normal_subgroups(g.group())
        .into_iter()
        .map(|n| EffEqRelation::from_normal(g.clone(), n).expect("normal"))
        .collect()
}

/// Normal-subgroup inclusions `(N, N∩P) ↪ (X, P)` for every corpus object.
pub fn normal_inclusions(max_order: usize) -> Vec<RpoMorphism> {
    rpo_groups(max_order)
        .into_iter()
        .flat_map(|g| {
            normal_subgroups(g.group())
                .into_iter()
                .map(move |n| g.restrict(&n, "N").1)
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Counts for one group order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub order: usize,
    pub groups: usize,
    pub cones: usize,
    pub preordered: usize,
    pub points: usize,
    pub schreier_points: usize,
    pub graphs: usize,
    pub internal_categories: usize,
    pub groupoids: usize,
}

/// Census of rpo groups up to `max_order`; points and graphs are counted by
/// the order of their total object, over every base in the corpus.
pub fn census(max_order: usize) -> Result<Vec<CensusRow>> {
    if max_order > MAX_CATALOG_ORDER {
        return Err(Error::Guard {
            what: "census order".into(),
            actual: max_order,
            limit: MAX_CATALOG_ORDER,
        });
    }
    let objs = rpo_groups(max_order);
    let rows: Vec<CensusRow> = (1..=max_order)
        .into_par_iter()
        .map(|n| {
            let mut row = CensusRow {
                order: n,
                groups: groups_up_to(n).iter().filter(|e| e.group.order() == n).count(),
                ..CensusRow::default()
            };
            for t in objs.iter().filter(|t| t.order() == n) {
                row.cones += 1;
                row.preordered += usize::from(t.is_preordered().holds);
                for b in objs.iter().filter(|b| n % b.order() == 0) {
                    for (e, ds) in sections(t, b) {
                        for d in &ds {
                            row.points += 1;
                            let p = SplitPoint::new(d.clone(), e.clone()).expect("split");
                            row.schreier_points += usize::from(is_schreier(&p).holds);
                            for c in &ds {
                                let g = ReflexiveGraph::new(d.clone(), c.clone(), e.clone()).expect("reflexive");
                                let v = full_verdict(&g);
                                row.graphs += 1;
                                row.internal_categories += usize::from(v.is_internal_category.holds);
                                row.groupoids += usize::from(v.is_groupoid.holds);
                            }
                        }
                    }
                }
            }
            row
        })
        .collect();
    Ok(rows)
}

/// Group homomorphisms `a -> b` ignoring cones.
pub fn group_homs(a: &FiniteRpoGroup, b: &FiniteRpoGroup) -> Vec<Vec<usize>> {
    homomorphisms(a.group(), b.group())
}

//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::sync::Arc;
use std::time::Instant;

use rpog_core::corpus::{
    effective_relations, graph_corpus, monotone_homs, morphisms, normal_inclusions, point_corpus, precrossed_corpus, rpo_groups,
};
use rpog_core::gallery::{run_example, GalleryId};
use rpog_core::internal::{
    brute_force_compositions, check_epsilon_naturality, check_eta_naturality, check_graph_iso, check_pxmod_iso, effective_relation_cone,
    epsilon, eta, is_crossed_iff_category, is_effective, is_internal_category, kernel_pair_cone, px_morphism_to_graph, px_morphisms,
    pxmod_to_graph, relation_graph, unique_m,
};
use rpog_core::quasivariety::{check_axioms, check_plus_iso, extend_to_pog, from_model, to_model};
use rpog_core::schreier::{
    action_of, aut_rpo, check_action_rep, classify_point, is_schreier, pullback_point, relation_points, s_center, s_center_sampled,
    semidirect, SCenter, SymbolicSCenter,
};
use rpog_core::subobjects::{check_lattice_iso, check_modular, huq_commute, normal_lattice, normalization, smith_commute, LatticeTables};
use rpog_core::symbolic::examples::{ideal_determined_square, z_n};
use rpog_core::symbolic::{ExampleId, SampleConfig};
use rpog_core::finite::catalog::{rpo_by_name, symmetric};
use rpog_core::finite::enumerate::find_isomorphism;
use rpog_core::FiniteRpoGroup;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    let objs = rpo_groups(8);
    for g in &objs {
        let m = to_model(g);
        let report = check_axioms(&m);
        ensure(report.all_hold(), || format!("{}: {report}", g.name()))?;
        let back = from_model(&m).map_err(|e| e.to_string())?;
        ensure(find_isomorphism(&back, g).is_some(), || format!("{}: G(F(g)) ≇ g", g.name()))?;
        let v = check_plus_iso(&m).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("{}: F(G(X)) ≇ X: {v}", g.name()))?;
    }
    Ok(format!("{} rpo groups", objs.len()))
}

fn c2() -> Outcome {
    let objs = rpo_groups(8);
    let mut refused = 0;
    for g in &objs {
        let ext = extend_to_pog(&to_model(g)).map_err(|e| e.to_string())?.is_extended();
        let pre = g.is_preordered().holds;
        ensure(ext == pre, || format!("{}: extends={ext}, preordered={pre}", g.name()))?;
        refused += usize::from(!ext);
    }
    let r = run_example(GalleryId::S4Counterexample, &SampleConfig::default()).map_err(|e| e.to_string())?;
    ensure(r.matches_expectation(), || r.to_text())?;
    ensure(r.to_text().contains("preordered: NO (witness (13)(12)(34)(13)=(32)(14))"), || r.to_text())?;
    Ok(format!("{} rpo groups, {refused} not preordered; S4 pair reproduced", objs.len()))
}

fn c3() -> Outcome {
    let objs = rpo_groups(12);
    for g in &objs {
        let v = check_lattice_iso(g);
        ensure(v.holds, || format!("{}: {v}", g.name()))?;
        let v = check_modular(&normal_lattice(g).tables);
        ensure(v.holds, || format!("{}: {v}", g.name()))?;
    }
    let n = normal_lattice(&rpo_by_name("S4_A4").map_err(|e| e.to_string())?).len();
    ensure(n == 4, || format!("(S4,A4) lattice has {n} elements"))?;
    ensure(!check_modular(&LatticeTables::pentagon()).holds, || "pentagon judged modular".into())?;
    Ok(format!("{} rpo groups; (S4,A4) lattice has 4 elements", objs.len()))
}

fn c4() -> Outcome {
    let (_, _, v) = ideal_determined_square();
    let verdict = v.is_normal_mono_sampled(&SampleConfig::default()).map_err(|e| e.to_string())?;
    ensure(!verdict.holds, || "v judged a normal mono".into())?;
    ensure(verdict.witness_law() == Some("cone-equality"), || verdict.to_string())?;
    let w = verdict.witness.clone().unwrap();
    ensure(w.get("a") == Some("1"), || verdict.to_string())?;
    Ok(verdict.to_string())
}

fn c5() -> Outcome {
    let points = point_corpus(12);
    for p in &points {
        let s = is_schreier(p).holds;
        let cls = classify_point(p);
        ensure(s == cls.is_product, || format!("{} -> {}: schreier={s}, product={}", p.total.name(), p.base.name(), cls.is_product))?;
        ensure(cls.within_bounds, || format!("{}: cone outside [P_prod, P_lex]", p.total.name()))?;
    }
    let objs = rpo_groups(8);
    let mut semidirects = 0;
    for x in &objs {
        let aut = aut_rpo(x);
        for y in objs.iter().filter(|y| x.order() * y.order() <= 16) {
            for mu in monotone_homs(y, &aut.rpo, false) {
                let action = action_of(&aut, x.clone(), y.clone(), &mu);
                let p = semidirect(&action).map_err(|e| e.to_string())?;
                ensure(is_schreier(&p).holds, || format!("{}⋊{} not Schreier", x.name(), y.name()))?;
                let cls = classify_point(&p);
                ensure(cls.action.act == action.act, || format!("{}⋊{}: action not recovered", x.name(), y.name()))?;
                semidirects += 1;
            }
        }
    }
    let small = rpo_groups(4);
    let mut pullbacks = 0;
    for p in point_corpus(6).iter().filter(|p| is_schreier(p).holds) {
        for z in &small {
            for f in morphisms(z, &p.base) {
                let q = pullback_point(p, &f).map_err(|e| e.to_string())?;
                ensure(is_schreier(&q).holds, || format!("pullback of {} along {} -> {}", p.total.name(), z.name(), p.base.name()))?;
                pullbacks += 1;
            }
        }
    }
    Ok(format!("{} points, {semidirects} semidirect products, {pullbacks} pullbacks", points.len()))
}

fn c6() -> Outcome {
    let objs = rpo_groups(36);
    let mut pairs = 0;
    let mut classes = 0;
    for x in &objs {
        for y in objs.iter().filter(|y| x.order() * y.order() <= 36) {
            let r = check_action_rep(x, y).map_err(|e| e.to_string())?;
            ensure(r.verdict.holds, || format!("x={}, y={}: {}", x.name(), y.name(), r.verdict))?;
            pairs += 1;
            classes += r.classes;
        }
    }
    Ok(format!("{pairs} pairs, {classes} extension classes"))
}

fn c7() -> Outcome {
    let modules = precrossed_corpus(16);
    let mut crossed = 0;
    let mut natural = 0;
    for px in &modules {
        let v = is_crossed_iff_category(px).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("{} -> {}: {v}", px.ker.name(), px.base.name()))?;
        crossed += usize::from(rpog_core::internal::check_peiffer(px).holds);
        let g = pxmod_to_graph(px).map_err(|e| e.to_string())?;
        let (h, map) = eta(&g).map_err(|e| e.to_string())?;
        let v = check_graph_iso(&g, &h, &map);
        ensure(v.holds, || format!("η: {v}"))?;
        let (q, fk) = epsilon(px).map_err(|e| e.to_string())?;
        let v = check_pxmod_iso(px, &q, &fk);
        ensure(v.holds, || format!("ε: {v}"))?;
    }
    let small: Vec<_> = modules.iter().filter(|p| p.ker.order() * p.base.order() <= 4).collect();
    for p in &modules {
        let targets: Vec<_> = if p.ker.order() * p.base.order() <= 4 { small.clone() } else { vec![p] };
        for q in targets {
            for f in px_morphisms(p, q) {
                let v = check_epsilon_naturality(p, q, &f).map_err(|e| e.to_string())?;
                ensure(v.holds, || format!("ε naturality: {v}"))?;
                let (gp, gq) = (pxmod_to_graph(p).map_err(|e| e.to_string())?, pxmod_to_graph(q).map_err(|e| e.to_string())?);
                let gf = px_morphism_to_graph(p, q, &f);
                ensure(gf.check(&gp, &gq), || "G(f) is not a graph morphism".into())?;
                let v = check_eta_naturality(&gp, &gq, &gf).map_err(|e| e.to_string())?;
                ensure(v.holds, || format!("η naturality: {v}"))?;
                natural += 1;
            }
        }
    }
    Ok(format!("{} precrossed modules ({crossed} crossed), {natural} morphisms checked for naturality", modules.len()))
}

fn c8() -> Outcome {
    let graphs = graph_corpus(8);
    let mut categories = 0;
    for g in &graphs {
        let found = brute_force_compositions(g);
        let cat = is_internal_category(g).holds;
        ensure(found.len() <= 1, || format!("{}: {} compositions", g.apex.name(), found.len()))?;
        ensure(found.len() == usize::from(cat), || format!("{}: search found {}, category={cat}", g.apex.name(), found.len()))?;
        if let Some(m) = found.first() {
            ensure(*m == unique_m(g), || format!("{}: composition differs from unique_m", g.apex.name()))?;
            categories += 1;
        }
    }
    Ok(format!("{} graphs, {categories} internal categories", graphs.len()))
}

fn c9() -> Outcome {
    let incs = normal_inclusions(12);
    for f in &incs {
        let formula = effective_relation_cone(f).map_err(|e| e.to_string())?;
        let oracle = kernel_pair_cone(f).map_err(|e| e.to_string())?;
        ensure(formula == oracle, || format!("{}: formula cone differs from kernel pair", f.cod().name()))?;
        let v = is_effective(&relation_graph(f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("{}: {v}", f.cod().name()))?;
    }
    Ok(format!("{} normal inclusions", incs.len()))
}

fn c10() -> Outcome {
    let cfg = SampleConfig::default();
    let mut lines = Vec::new();
    for id in [ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3, ExampleId::Ex4] {
        let r = run_example(GalleryId::Symbolic(id), &cfg).map_err(|e| e.to_string())?;
        ensure(r.matches_expectation(), || r.to_text())?;
        lines.push(id.name());
    }
    Ok(format!("{} reproduced", lines.join(", ")))
}

fn c11() -> Outcome {
    let objs = rpo_groups(12);
    let mut pairs = 0;
    let mut commuting = 0;
    for g in &objs {
        let rels: Vec<_> = effective_relations(g)
            .into_iter()
            .filter(|r| {
                let (p0, p1) = relation_points(r).expect("relation points");
                is_schreier(&p0).holds && is_schreier(&p1).holds
            })
            .collect();
        for r in &rels {
            for s in &rels {
                let smith = smith_commute(r, s).map_err(|e| e.to_string())?.holds;
                let huq = huq_commute(g, &normalization(r).as_subobject(), &normalization(s).as_subobject()).holds;
                ensure(smith == huq, || format!("{}: smith={smith}, huq={huq}", g.name()))?;
                pairs += 1;
                commuting += usize::from(smith);
            }
        }
    }
    Ok(format!("{pairs} relation pairs, {commuting} commuting"))
}

fn c12() -> Outcome {
    match s_center_sampled(&z_n(), &SampleConfig::default()).map_err(|e| e.to_string())? {
        SymbolicSCenter::Refused(v) => ensure(v.witness.as_ref().and_then(|w| w.get("p")) == Some("1"), || v.to_string())?,
        SymbolicSCenter::Whole(_) => return Err("(ℤ,ℕ) was not refused".into()),
    }
    let mut abelian = 0;
    for g in rpo_groups(12).iter().filter(|g| g.group().is_abelian()) {
        match s_center(g).map_err(|e| e.to_string())? {
            SCenter::Center(z) => {
                ensure(z.order() == g.order() && z.cone() == *g.cone().members(), || format!("{}: center is not whole", g.name()))?
            }
            SCenter::Refused(v) => return Err(format!("{}: refused {v}", g.name())),
        }
        abelian += 1;
    }
    let s3 = Arc::new(FiniteRpoGroup::discrete("S3", symmetric(3)));
    match s_center(&s3).map_err(|e| e.to_string())? {
        SCenter::Center(z) => ensure(z.order() == 1, || format!("Z(S3) has order {}", z.order()))?,
        SCenter::Refused(v) => return Err(format!("(S3,{{e}}) refused: {v}")),
    }
    Ok(format!("(ℤ,ℕ) refused with witness 1; {abelian} abelian objects; (S3,{{e}}) ↦ zero"))
}

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("axiomatization", c1),
        ("preordered extension", c2),
        ("normal-subobject lattices", c3),
        ("ideal-determined failure", c4),
        ("Schreier equivalence", c5),
        ("action representability", c6),
        ("crossed modules and internal categories", c7),
        ("uniqueness of composition", c8),
        ("effective relations", c9),
        ("symbolic examples", c10),
        ("Smith and Huq commutativity", c11),
        ("S-center", c12),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-')).map(|f| f.to_lowercase());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if filter.as_ref().is_some_and(|f| !name.to_lowercase().contains(f.as_str()) && *f != n.to_string()) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {n}: {name} ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Reflexive graphs, S-precrossed modules, internal categories and
//! groupoids, and effective internal relations.
//!
//! Pullback pairs `(a, b)` satisfy `d(a) = c(b)`; composition is
//! `m(a,b) = b - e(c(b)) + a`. Graphs stay in user coordinates and the
//! semidirect form `K ⋊ X₀` is computed on demand through
//! `η: a ↦ (a - ed(a), d(a))`.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finite::enumerate::{for_each_hom, homomorphisms};
use crate::finite::group::FiniteGroup;
use crate::finite::rpo::{Cone, FiniteRpoGroup, RpoMorphism};
use crate::schreier::{classify_point, is_schreier, is_schreier_sampled, semidirect, semidirect_group, ActionMorphism, SplitPoint};
use crate::symbolic::{SampleConfig, SymbolicElement, SymbolicGraph};
use crate::verdict::{Verdict, Witness};

/// `d, c: apex -> base` split by `e`.
#[derive(Clone, Debug)]
pub struct ReflexiveGraph {
    pub apex: Arc<FiniteRpoGroup>,
    pub base: Arc<FiniteRpoGroup>,
    pub d: RpoMorphism,
    pub c: RpoMorphism,
    pub e: RpoMorphism,
}

/// The pullback `{(a,b) : d(a) = c(b)}` with the componentwise cone.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub rpo: Arc<FiniteRpoGroup>,
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok()
    }
}

impl ReflexiveGraph {
    pub fn new(d: RpoMorphism, c: RpoMorphism, e: RpoMorphism) -> Result<Self> {
        if **d.dom() != **c.dom() || **d.cod() != **c.cod() {
            return Err(Error::CarrierMismatch("d and c must be parallel".into()));
        }
        SplitPoint::new(d.clone(), e.clone())?;
        SplitPoint::new(c.clone(), e.clone())
            .map_err(|err| Error::precondition("c∘e = id", err.to_string()))?;
        Ok(ReflexiveGraph {
            apex: d.dom().clone(),
            base: d.cod().clone(),
            d,
            c,
            e,
        })
    }

    /// The kernel pair of `g -> 0`: apex `g × g`, `d` first and `c` second
    /// projection, `e` the diagonal.
    pub fn indiscrete(g: Arc<FiniteRpoGroup>) -> Self {
        let n = g.order();
        let apex = Arc::new(g.product(&g));
        let d = RpoMorphism::new(apex.clone(), g.clone(), (0..n * n).map(|i| i / n).collect()).expect("projection");
        let c = RpoMorphism::new(apex.clone(), g.clone(), (0..n * n).map(|i| i % n).collect()).expect("projection");
        let e = RpoMorphism::new(g.clone(), apex, (0..n).map(|x| x * n + x).collect()).expect("diagonal");
        ReflexiveGraph::new(d, c, e).expect("kernel pair")
    }

    /// `d = c`, the discrete graph over a point.
    pub fn from_point(p: &SplitPoint) -> Self {
        ReflexiveGraph {
            apex: p.total.clone(),
            base: p.base.clone(),
            d: p.d.clone(),
            c: p.d.clone(),
            e: p.e.clone(),
        }
    }

    /// The point `(d, e)`.
    pub fn point(&self) -> SplitPoint {
        SplitPoint {
            total: self.apex.clone(),
            base: self.base.clone(),
            d: self.d.clone(),
            e: self.e.clone(),
        }
    }

    pub fn pullback(&self) -> Pullback {
        let n = self.apex.order();
        let grp = self.apex.group();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.d.apply(a) == self.c.apply(b))
            .collect();
        let pos = |p: (usize, usize)| pairs.binary_search(&p).expect("pullback is a subgroup");
        let table = FiniteGroup::from_fn(pairs.len(), |i, j| {
            let ((a, b), (x, y)) = (pairs[i], pairs[j]);
            pos((grp.op(a, x), grp.op(b, y)))
        });
        let labels = pairs.iter().map(|&(a, b)| format!("({},{})", self.apex.label(a), self.apex.label(b))).collect();
        let cone = Cone::from_indices(
            pairs.len(),
            (0..pairs.len()).filter(|&i| self.apex.is_positive(pairs[i].0) && self.apex.is_positive(pairs[i].1)),
        );
        let rpo = Arc::new(FiniteRpoGroup::from_parts("pullback", table.with_labels(labels), cone));
        Pullback { rpo, pairs }
    }

    fn label_pair(&self, (a, b): (usize, usize)) -> String {
        format!("({},{})", self.apex.label(a), self.apex.label(b))
    }
}

/// The composition candidate on the pullback, indexed like `Pullback::pairs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionMap {
    pub pairs: Vec<(usize, usize)>,
    pub values: Vec<usize>,
}

impl CompositionMap {
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok().map(|i| self.values[i])
    }
}

pub fn unique_m(g: &ReflexiveGraph) -> CompositionMap {
    let grp = g.apex.group();
    let pairs = g.pullback().pairs;
    let values = pairs
        .iter()
        .map(|&(a, b)| grp.op(grp.sub(b, g.e.apply(g.c.apply(b))), a))
        .collect();
    CompositionMap { pairs, values }
}

/// `m` is a homomorphism on the pullback and monotone for its cone.
pub fn is_internal_category(g: &ReflexiveGraph) -> Verdict {
    let pb = g.pullback();
    let m = unique_m(g);
    let (pg, ag) = (pb.rpo.group(), g.apex.group());
    for i in pg.elements() {
        for j in pg.elements() {
            if m.values[pg.op(i, j)] != ag.op(m.values[i], m.values[j]) {
                return Verdict::fail(
                    Witness::new("m is a homomorphism")
                        .bind("u", g.label_pair(pb.pairs[i]))
                        .bind("v", g.label_pair(pb.pairs[j])),
                );
            }
        }
    }
    for i in pb.rpo.cone().iter() {
        if !g.apex.is_positive(m.values[i]) {
            return Verdict::fail(
                Witness::new("m is monotone")
                    .bind("u", g.label_pair(pb.pairs[i]))
                    .bind("m(u)", g.apex.label(m.values[i])),
            );
        }
    }
    Verdict::pass()
}

/// `σ(a) = e(c(a)) - a + e(d(a))`.
pub fn sigma_of(g: &ReflexiveGraph) -> Vec<usize> {
    let grp = g.apex.group();
    grp.elements()
        .map(|a| grp.op(grp.sub(g.e.apply(g.c.apply(a)), a), g.e.apply(g.d.apply(a))))
        .collect()
}

pub fn is_groupoid(g: &ReflexiveGraph) -> Result<Verdict> {
    let cat = is_internal_category(g);
    if !cat.holds {
        return Err(Error::precondition("internal category", cat.to_string()));
    }
    let sigma = RpoMorphism::new(g.apex.clone(), g.apex.clone(), sigma_of(g))?;
    if let Some(w) = sigma.homomorphism_violation() {
        return Ok(Verdict::fail(Witness { law: "σ is a homomorphism".into(), ..w }));
    }
    Ok(match g.apex.cone().iter().find(|&a| !g.apex.is_positive(sigma.apply(a))) {
        Some(a) => Verdict::fail(
            Witness::new("σ is monotone")
                .bind("a", g.apex.label(a))
                .bind("σ(a)", g.apex.label(sigma.apply(a))),
        ),
        None => Verdict::pass(),
    })
}

/// `∂: ker -> base` with an action of `base` on `ker` by monotone
/// automorphisms, subject to `∂(μ(x)(a)) = x + ∂(a) - x`.
#[derive(Clone, Debug)]
pub struct PrecrossedModule {
    pub base: Arc<FiniteRpoGroup>,
    pub ker: Arc<FiniteRpoGroup>,
    pub boundary: RpoMorphism,
    pub action: ActionMorphism,
}

impl PrecrossedModule {
    pub fn new(boundary: RpoMorphism, action: ActionMorphism) -> Result<Self> {
        if **boundary.dom() != *action.target || **boundary.cod() != *action.base {
            return Err(Error::CarrierMismatch("boundary and action disagree on ker/base".into()));
        }
        let v = boundary.check();
        if !v.holds {
            return Err(Error::precondition("∂ is a morphism", v.to_string()));
        }
        let v = action.check();
        if !v.holds {
            return Err(Error::precondition("action by monotone automorphisms", v.to_string()));
        }
        let px = PrecrossedModule {
            base: boundary.cod().clone(),
            ker: boundary.dom().clone(),
            boundary,
            action,
        };
        if let Some(w) = px.px_violation() {
            return Err(Error::precondition("PX", w.to_string()));
        }
        Ok(px)
    }

    /// First `(x, a)` with `∂(μ(x)(a)) ≠ x + ∂(a) - x`.
    pub fn px_violation(&self) -> Option<Witness> {
        let bg = self.base.group();
        for x in bg.elements() {
            for a in self.ker.group().elements() {
                if self.boundary.apply(self.action.apply(x, a)) != bg.conj(x, self.boundary.apply(a)) {
                    return Some(
                        Witness::new("PX")
                            .bind("x", self.base.label(x))
                            .bind("a", self.ker.label(a)),
                    );
                }
            }
        }
        None
    }
}

/// `μ(∂(a))(b) = a + b - a` for all `a, b`.
pub fn check_peiffer(px: &PrecrossedModule) -> Verdict {
    let kg = px.ker.group();
    for a in kg.elements() {
        for b in kg.elements() {
            let lhs = px.action.apply(px.boundary.apply(a), b);
            let rhs = kg.conj(a, b);
            if lhs != rhs {
                return Verdict::fail(
                    Witness::new("Peiffer")
                        .bind("a", px.ker.label(a))
                        .bind("b", px.ker.label(b))
                        .with_expr(format!(
                            "μ(∂a)(b)={} but a+b-a={}",
                            px.ker.label(lhs),
                            px.ker.label(rhs)
                        )),
                );
            }
        }
    }
    Verdict::pass()
}

/// Kernel of `d` with `∂ = c` restricted and conjugation by `e`.
pub fn graph_to_pxmod(g: &ReflexiveGraph) -> Result<PrecrossedModule> {
    let v = is_schreier(&g.point());
    if !v.holds {
        return Err(Error::precondition("Schreier point", v.to_string()));
    }
    let cls = classify_point(&g.point());
    let (ker, inc) = g.d.kernel();
    let boundary = RpoMorphism::new(ker, g.base.clone(), inc.map().iter().map(|&k| g.c.apply(k)).collect())?;
    PrecrossedModule::new(boundary, cls.action)
}

/// `X₁ ⋊ X₀` with cone `P₁ × P₀`, `d = p₁`, `c = ∂p₀ + p₁`, `e = i₁`.
pub fn pxmod_to_graph(px: &PrecrossedModule) -> Result<ReflexiveGraph> {
    if let Some(w) = px.px_violation() {
        return Err(Error::precondition("PX", w.to_string()));
    }
    let p = semidirect(&px.action)?;
    let m = px.base.order();
    let bg = px.base.group();
    let c = RpoMorphism::new(
        p.total.clone(),
        px.base.clone(),
        (0..p.total.order()).map(|i| bg.op(px.boundary.apply(i / m), i % m)).collect(),
    )?;
    ReflexiveGraph::new(p.d, c, p.e)
}

/// Peiffer holds iff the associated graph is an internal category.
pub fn is_crossed_iff_category(px: &PrecrossedModule) -> Result<Verdict> {
    let peiffer = check_peiffer(px).holds;
    let category = is_internal_category(&pxmod_to_graph(px)?).holds;
    Ok(if peiffer == category {
        Verdict::pass()
    } else {
        Verdict::fail(
            Witness::new("Peiffer ⟺ internal category")
                .bind("peiffer", peiffer)
                .bind("category", category),
        )
    })
}

/// Checks that `map: g.apex -> h.apex` is an isomorphism of reflexive graphs
/// over the identity of the (shared) base.
pub fn check_graph_iso(g: &ReflexiveGraph, h: &ReflexiveGraph, map: &[usize]) -> Verdict {
    let (ga, ha) = (g.apex.group(), h.apex.group());
    if map.len() != ga.order() || ga.order() != ha.order() || !crate::finite::perm::is_permutation(map) {
        return Verdict::fail(Witness::new("bijective"));
    }
    for a in ga.elements() {
        for b in ga.elements() {
            if map[ga.op(a, b)] != ha.op(map[a], map[b]) {
                return Verdict::fail(
                    Witness::new("homomorphism")
                        .bind("a", g.apex.label(a))
                        .bind("b", g.apex.label(b)),
                );
            }
        }
    }
    let image = BitSet::from_indices(ha.order(), g.apex.cone().iter().map(|a| map[a]));
    if image != *h.apex.cone().members() {
        return Verdict::fail(Witness::new("cone onto cone"));
    }
    for a in ga.elements() {
        if h.d.apply(map[a]) != g.d.apply(a) || h.c.apply(map[a]) != g.c.apply(a) {
            return Verdict::fail(Witness::new("commutes with d and c").bind("a", g.apex.label(a)));
        }
    }
    match g.base.group().elements().find(|&x| map[g.e.apply(x)] != h.e.apply(x)) {
        Some(x) => Verdict::fail(Witness::new("commutes with e").bind("x", g.base.label(x))),
        None => Verdict::pass(),
    }
}

/// `η: g ≅ G(F(g))`, `a ↦ (a - ed(a), d(a))`.
pub fn eta(g: &ReflexiveGraph) -> Result<(ReflexiveGraph, Vec<usize>)> {
    let h = pxmod_to_graph(&graph_to_pxmod(g)?)?;
    Ok((h, classify_point(&g.point()).transport))
}

/// `ε: px ≅ F(G(px))`, `k ↦ (k, 0)` on kernels and the identity on bases.
pub fn epsilon(px: &PrecrossedModule) -> Result<(PrecrossedModule, Vec<usize>)> {
    let q = graph_to_pxmod(&pxmod_to_graph(px)?)?;
    let (_, inc) = pxmod_to_graph(px)?.d.kernel();
    let m = px.base.order();
    let fk = px
        .ker
        .group()
        .elements()
        .map(|k| inc.map().iter().position(|&i| i == k * m).expect("(k,0) is in the kernel"))
        .collect();
    Ok((q, fk))
}

/// Checks that `fk` with the identity on the base is an isomorphism of
/// precrossed modules `p -> q`.
pub fn check_pxmod_iso(p: &PrecrossedModule, q: &PrecrossedModule, fk: &[usize]) -> Verdict {
    if *p.base != *q.base {
        return Verdict::fail(Witness::new("same base"));
    }
    let f = match RpoMorphism::new(p.ker.clone(), q.ker.clone(), fk.to_vec()) {
        Ok(f) => f,
        Err(_) => return Verdict::fail(Witness::new("kernel map shape")),
    };
    if !f.is_injective() || !f.is_surjective() || !f.check().holds {
        return Verdict::fail(Witness::new("kernel map is a bijective morphism"));
    }
    if BitSet::from_indices(q.ker.order(), p.ker.cone().iter().map(|a| fk[a])) != *q.ker.cone().members() {
        return Verdict::fail(Witness::new("cone onto cone"));
    }
    let mismatch = |x: usize, a: usize| fk[p.action.apply(x, a)] != q.action.apply(x, fk[a]);
    for a in p.ker.group().elements() {
        if q.boundary.apply(fk[a]) != p.boundary.apply(a) {
            return Verdict::fail(Witness::new("commutes with ∂").bind("a", p.ker.label(a)));
        }
        if let Some(x) = p.base.group().elements().find(|&x| mismatch(x, a)) {
            return Verdict::fail(
                Witness::new("equivariant")
                    .bind("x", p.base.label(x))
                    .bind("a", p.ker.label(a)),
            );
        }
    }
    Verdict::pass()
}

/// A pair `(f₁, f₀)` commuting with `d`, `c` and `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub f1: Vec<usize>,
    pub f0: Vec<usize>,
}

/// A pair `(f_K, f₀)` commuting with `∂` and the actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PxMorphism {
    pub fk: Vec<usize>,
    pub f0: Vec<usize>,
}

fn is_rpo_morphism(dom: &Arc<FiniteRpoGroup>, cod: &Arc<FiniteRpoGroup>, map: &[usize]) -> bool {
    RpoMorphism::new(dom.clone(), cod.clone(), map.to_vec()).is_ok_and(|f| f.check().holds)
}

impl GraphMorphism {
    pub fn check(&self, g: &ReflexiveGraph, h: &ReflexiveGraph) -> bool {
        is_rpo_morphism(&g.apex, &h.apex, &self.f1)
            && is_rpo_morphism(&g.base, &h.base, &self.f0)
            && g.apex.group().elements().all(|a| {
                h.d.apply(self.f1[a]) == self.f0[g.d.apply(a)] && h.c.apply(self.f1[a]) == self.f0[g.c.apply(a)]
            })
            && g.base.group().elements().all(|x| self.f1[g.e.apply(x)] == h.e.apply(self.f0[x]))
    }
}

impl PxMorphism {
    pub fn check(&self, p: &PrecrossedModule, q: &PrecrossedModule) -> bool {
        is_rpo_morphism(&p.ker, &q.ker, &self.fk)
            && is_rpo_morphism(&p.base, &q.base, &self.f0)
            && p.ker.group().elements().all(|a| {
                q.boundary.apply(self.fk[a]) == self.f0[p.boundary.apply(a)]
                    && p.base.group().elements().all(|x| {
                        self.fk[p.action.apply(x, a)] == q.action.apply(self.f0[x], self.fk[a])
                    })
            })
    }
}

/// All morphisms of precrossed modules `p -> q`.
pub fn px_morphisms(p: &PrecrossedModule, q: &PrecrossedModule) -> Vec<PxMorphism> {
    let bases: Vec<Vec<usize>> = homomorphisms(p.base.group(), q.base.group())
        .into_iter()
        .filter(|f| p.base.cone().iter().all(|x| q.base.is_positive(f[x])))
        .collect();
    let kers: Vec<Vec<usize>> = homomorphisms(p.ker.group(), q.ker.group())
        .into_iter()
        .filter(|f| p.ker.cone().iter().all(|x| q.ker.is_positive(f[x])))
        .collect();
    let mut out = Vec::new();
    for f0 in &bases {
        for fk in &kers {
            let m = PxMorphism { fk: fk.clone(), f0: f0.clone() };
            if m.check(p, q) {
                out.push(m);
            }
        }
    }
    out
}

/// `F` on morphisms: restriction to kernels.
pub fn graph_morphism_to_px(g: &ReflexiveGraph, h: &ReflexiveGraph, f: &GraphMorphism) -> PxMorphism {
    let (_, inc_g) = g.d.kernel();
    let (_, inc_h) = h.d.kernel();
    let fk = inc_g
        .map()
        .iter()
        .map(|&a| inc_h.map().iter().position(|&b| b == f.f1[a]).expect("kernels map to kernels"))
        .collect();
    PxMorphism { fk, f0: f.f0.clone() }
}

/// `G` on morphisms: `(k, x) ↦ (f_K(k), f₀(x))`.
pub fn px_morphism_to_graph(p: &PrecrossedModule, q: &PrecrossedModule, f: &PxMorphism) -> GraphMorphism {
    let (m, mq) = (p.base.order(), q.base.order());
    let f1 = (0..p.ker.order() * m).map(|i| f.fk[i / m] * mq + f.f0[i % m]).collect();
    GraphMorphism { f1, f0: f.f0.clone() }
}

/// `η_h ∘ f₁ = G(F(f))₁ ∘ η_g`.
pub fn check_eta_naturality(g: &ReflexiveGraph, h: &ReflexiveGraph, f: &GraphMorphism) -> Result<Verdict> {
    let (fg, fh) = (graph_to_pxmod(g)?, graph_to_pxmod(h)?);
    let gf = px_morphism_to_graph(&fg, &fh, &graph_morphism_to_px(g, h, f));
    let (_, eta_g) = eta(g)?;
    let (_, eta_h) = eta(h)?;
    Ok(match g.apex.group().elements().find(|&a| eta_h[f.f1[a]] != gf.f1[eta_g[a]]) {
        Some(a) => Verdict::fail(Witness::new("η is natural").bind("a", g.apex.label(a))),
        None => Verdict::pass(),
    })
}

/// `ε_q ∘ f_K = F(G(f))_K ∘ ε_p`.
pub fn check_epsilon_naturality(p: &PrecrossedModule, q: &PrecrossedModule, f: &PxMorphism) -> Result<Verdict> {
    let (gp, gq) = (pxmod_to_graph(p)?, pxmod_to_graph(q)?);
    let fgf = graph_morphism_to_px(&gp, &gq, &px_morphism_to_graph(p, q, f));
    let (_, eps_p) = epsilon(p)?;
    let (_, eps_q) = epsilon(q)?;
    Ok(match p.ker.group().elements().find(|&a| eps_q[f.fk[a]] != fgf.fk[eps_p[a]]) {
        Some(a) => Verdict::fail(Witness::new("ε is natural").bind("a", p.ker.label(a))),
        None => Verdict::pass(),
    })
}

/// Every monotone morphism on the pullback satisfying the category axioms,
/// found by exhaustive search.
pub fn brute_force_compositions(g: &ReflexiveGraph) -> Vec<CompositionMap> {
    let pb = g.pullback();
    let pg = pb.rpo.group();
    let mut found = Vec::new();
    let _: Option<()> = for_each_hom(pg, g.apex.group(), false, |m| {
        if is_category_structure(g, &pb, m) {
            found.push(CompositionMap { pairs: pb.pairs.clone(), values: m.to_vec() });
        }
        ControlFlow::Continue(())
    });
    found
}

fn is_category_structure(g: &ReflexiveGraph, pb: &Pullback, m: &[usize]) -> bool {
    let at = |a: usize, b: usize| pb.index_of(a, b).map(|i| m[i]);
    let monotone = pb.rpo.cone().iter().all(|i| g.apex.is_positive(m[i]));
    let ends = pb.pairs.iter().enumerate().all(|(i, &(a, b))| {
        g.d.apply(m[i]) == g.d.apply(b) && g.c.apply(m[i]) == g.c.apply(a)
    });
    let units = g.apex.group().elements().all(|a| {
        at(a, g.e.apply(g.d.apply(a))) == Some(a) && at(g.e.apply(g.c.apply(a)), a) == Some(a)
    });
    monotone
        && ends
        && units
        && pb.pairs.iter().enumerate().all(|(i, &(a, b))| {
            pb.pairs
                .iter()
                .filter(|&&(b2, _)| b2 == b)
                .all(|&(_, c)| at(m[i], c) == at(a, m[pb.index_of(b, c).expect("composable")]))
        })
}

/// Index `(a, b) ↦ a * |X₀| + b` of `G ⋊ X₀`, where `X₀` acts on `G` by
/// conjugation through the normal mono `∂`.
fn conjugation_action(partial: &RpoMorphism) -> Result<ActionMorphism> {
    let v = partial.is_normal_mono().map(|v| v.witness_law() != Some("normal-image"))?;
    if !v {
        return Err(Error::precondition("∂ has normal image", "image of ∂ is not normal"));
    }
    let (g, x) = (partial.dom().clone(), partial.cod().clone());
    let mut pre = vec![usize::MAX; x.order()];
    for a in g.group().elements() {
        pre[partial.apply(a)] = a;
    }
    let act = x
        .group()
        .elements()
        .map(|y| g.group().elements().map(|a| pre[x.group().conj(y, partial.apply(a))]).collect())
        .collect();
    Ok(ActionMorphism { base: x, target: g, act })
}

/// `{(a, b) : b ∈ P₀, ∂(a) + b ∈ P₀}` as indices `a * |X₀| + b`.
pub fn effective_relation_cone(partial: &RpoMorphism) -> Result<BitSet> {
    conjugation_action(partial)?;
    let x = partial.cod();
    let m = x.order();
    Ok(BitSet::from_indices(
        partial.dom().order() * m,
        (0..partial.dom().order() * m).filter(|&i| {
            let (a, b) = (i / m, i % m);
            x.is_positive(b) && x.is_positive(x.group().op(partial.apply(a), b))
        }),
    ))
}

/// The relation graph on `G ⋊ X₀` with the effective cone:
/// `d(a,b) = b`, `c(a,b) = ∂(a) + b`, `e(b) = (0,b)`.
pub fn relation_graph(partial: &RpoMorphism) -> Result<ReflexiveGraph> {
    let mu = conjugation_action(partial)?;
    let cone = effective_relation_cone(partial)?;
    let x = partial.cod().clone();
    let m = x.order();
    let apex = Arc::new(FiniteRpoGroup::from_parts("R", semidirect_group(&mu), Cone::new(cone)));
    let n = apex.order();
    let d = RpoMorphism::new(apex.clone(), x.clone(), (0..n).map(|i| i % m).collect())?;
    let c = RpoMorphism::new(
        apex.clone(),
        x.clone(),
        (0..n).map(|i| x.group().op(partial.apply(i / m), i % m)).collect(),
    )?;
    let e = RpoMorphism::new(x, apex, (0..m).collect())?;
    ReflexiveGraph::new(d, c, e)
}

/// Oracle for the effective cone: the quotient `q: X₀ -> X₀/∂G`, its kernel
/// pair `{(x,y) : q(x) = q(y)}` with cone `P₀ × P₀`, transported to
/// `(a, b)` coordinates by `(x, y) ↦ (∂⁻¹(x - y), y)`.
pub fn kernel_pair_cone(partial: &RpoMorphism) -> Result<BitSet> {
    let x = partial.cod();
    let xg = x.group();
    let image = partial.image();
    // Cosets labelled by their least element.
    let rep: Vec<usize> = xg
        .elements()
        .map(|a| image.iter().map(|k| xg.op(a, k)).min().expect("nonempty"))
        .collect();
    let reps: Vec<usize> = {
        let mut r = rep.clone();
        r.sort_unstable();
        r.dedup();
        r
    };
    let q: Vec<usize> = rep.iter().map(|r| reps.binary_search(r).expect("rep")).collect();
    let quotient = FiniteGroup::from_fn(reps.len(), |s, t| q[xg.op(reps[s], reps[t])]);
    if quotient.law_violation().is_some() {
        return Err(Error::precondition("∂ has normal image", "cosets do not form a group"));
    }
    let mut pre = vec![usize::MAX; x.order()];
    for a in partial.dom().group().elements() {
        pre[partial.apply(a)] = a;
    }
    let m = x.order();
    let mut out = BitSet::new(partial.dom().order() * m);
    for u in x.cone().iter() {
        for v in x.cone().iter() {
            if q[u] == q[v] {
                out.insert(pre[xg.sub(u, v)] * m + v);
            }
        }
    }
    Ok(out)
}

/// For an internal equivalence relation: the transported cone equals the
/// effective cone of `∂ = c` restricted to `ker d`.
pub fn is_effective(g: &ReflexiveGraph) -> Result<Verdict> {
    let n = g.apex.order();
    let mut seen = BitSet::new(g.base.order() * g.base.order());
    for a in 0..n {
        if !seen.insert(g.d.apply(a) * g.base.order() + g.c.apply(a)) {
            return Err(Error::precondition("(d,c) is jointly monic", format!("collision at {}", g.apex.label(a))));
        }
    }
    let (ker, inc) = g.d.kernel();
    let partial = RpoMorphism::new(ker, g.base.clone(), inc.map().iter().map(|&k| g.c.apply(k)).collect())?;
    let formula = effective_relation_cone(&partial)?;
    let cls = classify_point(&g.point());
    if cls.cone != formula {
        let m = g.base.order();
        let i = (0..formula.capacity())
            .find(|&i| cls.cone.contains(i) != formula.contains(i))
            .expect("cones differ");
        let a = cls.transport.iter().position(|&t| t == i).expect("transport is bijective");
        return Ok(Verdict::fail(
            Witness::new("effective cone")
                .bind("a", g.apex.label(a))
                .bind("k", partial.dom().label(i / m))
                .bind("b", g.base.label(i % m))
                .bind("in cone", cls.cone.contains(i)),
        ));
    }
    let sigma = is_groupoid(g)?;
    if !sigma.holds {
        return Ok(Verdict::fail(Witness::new("σ-check").bind("detail", sigma)));
    }
    Ok(Verdict::pass())
}

/// Aggregated verdicts for a reflexive graph.
#[derive(Clone, Debug)]
pub struct InternalCategoryVerdict {
    pub is_schreier_graph: Verdict,
    pub is_internal_category: Verdict,
    pub is_groupoid: Verdict,
    /// For Schreier categories: the kernel cone is a group.
    pub kernel_cone_is_group: Option<Verdict>,
    pub m: Option<CompositionMap>,
    pub sigma: Option<Vec<usize>>,
}

fn not_a_category() -> Verdict {
    Verdict::fail(Witness::new("internal category"))
}

pub fn full_verdict(g: &ReflexiveGraph) -> InternalCategoryVerdict {
    let schreier = is_schreier(&g.point());
    let cat = is_internal_category(g);
    let groupoid = if cat.holds { is_groupoid(g).unwrap_or_else(|_| not_a_category()) } else { not_a_category() };
    let kernel_cone_is_group = (schreier.holds && cat.holds).then(|| g.d.kernel().0.cone_is_group());
    InternalCategoryVerdict {
        m: cat.holds.then(|| unique_m(g)),
        sigma: groupoid.holds.then(|| sigma_of(g)),
        is_schreier_graph: schreier,
        is_internal_category: cat,
        is_groupoid: groupoid,
        kernel_cone_is_group,
    }
}

/// Sampled verdicts for a symbolic graph.
#[derive(Clone, Debug)]
pub struct SymbolicCategoryVerdict {
    pub is_schreier_graph: Verdict,
    pub is_internal_category: Verdict,
    pub is_groupoid: Verdict,
}

/// `m` is additive on sampled composable pairs and monotone on sampled
/// positive composable pairs.
pub fn is_internal_category_sampled(g: &SymbolicGraph, cfg: &SampleConfig) -> Result<Verdict> {
    let grp = &g.apex.group;
    let pairs = g.composable_pairs(cfg)?;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let (a2, b2) = &pairs[(i + 1) % pairs.len()];
        let lhs = g.m(&grp.op(a, a2), &grp.op(b, b2));
        let rhs = grp.op(&g.m(a, b), &g.m(a2, b2));
        if lhs != rhs {
            return Ok(Verdict::fail(
                Witness::new("m is a homomorphism")
                    .bind("u", format!("({a},{b})"))
                    .bind("v", format!("({a2},{b2})")),
            )
            .sampled());
        }
    }
    for (a, b) in g.positive_composable_pairs(cfg)? {
        let v = g.m(&a, &b);
        if !g.apex.is_positive(&v) {
            return Ok(Verdict::fail(
                Witness::new("m is monotone")
                    .bind("u", format!("({a},{b})"))
                    .with_expr(format!("m({a},{b})={v} is not positive")),
            )
            .sampled());
        }
    }
    Ok(Verdict::pass().sampled())
}

pub fn is_groupoid_sampled(g: &SymbolicGraph, cfg: &SampleConfig) -> Result<Verdict> {
    let cat = is_internal_category_sampled(g, cfg)?;
    if !cat.holds {
        return Err(Error::precondition("internal category", cat.to_string()));
    }
    let grp = &g.apex.group;
    let xs = g.apex.samples(cfg)?;
    for (i, a) in xs.iter().enumerate() {
        let b = &xs[(i + 1) % xs.len()];
        if g.sigma(&grp.op(a, b)) != grp.op(&g.sigma(a), &g.sigma(b)) {
            return Ok(Verdict::fail(Witness::new("σ is a homomorphism").bind("a", a).bind("b", b)).sampled());
        }
    }
    for a in g.apex.positive_samples(cfg)? {
        let s = g.sigma(&a);
        if !g.apex.is_positive(&s) {
            return Ok(Verdict::fail(
                Witness::new("σ is monotone")
                    .bind("a", &a)
                    .bind("σ(a)", &s)
                    .with_expr(format!("σ{a}={s} is not positive")),
            )
            .sampled());
        }
    }
    Ok(Verdict::pass().sampled())
}

/// Peiffer identity on sampled kernel elements `a - ed(a)`.
pub fn check_peiffer_sampled(g: &SymbolicGraph, cfg: &SampleConfig) -> Result<Verdict> {
    let grp = &g.apex.group;
    let xs = g.apex.samples(cfg)?;
    let kernel: Vec<SymbolicElement> = xs.iter().map(|a| grp.sub(a, &g.e.apply(&g.d.apply(a)))).collect();
    for (i, k) in kernel.iter().enumerate() {
        let l = &kernel[(i + 1) % kernel.len()];
        let ec = g.e.apply(&g.c.apply(k));
        let lhs = grp.sub(&grp.op(&ec, l), &ec);
        let rhs = grp.sub(&grp.op(k, l), k);
        if lhs != rhs {
            return Ok(Verdict::fail(Witness::new("Peiffer").bind("a", k).bind("b", l)).sampled());
        }
    }
    Ok(Verdict::pass().sampled())
}

pub fn full_verdict_sampled(g: &SymbolicGraph, cfg: &SampleConfig) -> Result<SymbolicCategoryVerdict> {
    let cat = is_internal_category_sampled(g, cfg)?;
    let groupoid = if cat.holds { is_groupoid_sampled(g, cfg)? } else { not_a_category().sampled() };
    Ok(SymbolicCategoryVerdict {
        is_schreier_graph: is_schreier_sampled(&g.point(), cfg)?,
        is_internal_category: cat,
        is_groupoid: groupoid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog::{cyclic, symmetric};
    use crate::symbolic::examples;

    fn arc(g: FiniteRpoGroup) -> Arc<FiniteRpoGroup> {
        Arc::new(g)
    }

    fn trivial_px(ker: Arc<FiniteRpoGroup>, base: Arc<FiniteRpoGroup>) -> PrecrossedModule {
        PrecrossedModule::new(
            RpoMorphism::zero(ker.clone(), base.clone()),
            ActionMorphism::trivial(base, ker),
        )
        .unwrap()
    }

    #[test]
    fn units_compose_to_units() {
        let g = ReflexiveGraph::indiscrete(arc(FiniteRpoGroup::indiscrete("S3", symmetric(3))));
        let m = unique_m(&g);
        for x in 0..6 {
            let ex = g.e.apply(x);
            assert_eq!(m.get(ex, ex), Some(ex));
        }
        assert!(is_internal_category(&g).holds);
        assert!(is_groupoid(&g).unwrap().holds);
    }

    #[test]
    fn semidirect_composition_formula() {
        // Conjugation module of S3 on itself: m((a,∂b+x),(b,x)) = (a+b,x).
        let s3 = arc(FiniteRpoGroup::discrete("S3", symmetric(3)));
        let px = PrecrossedModule::new(RpoMorphism::identity(s3.clone()), ActionMorphism::conjugation(s3.clone())).unwrap();
        let g = pxmod_to_graph(&px).unwrap();
        let m = unique_m(&g);
        let grp = s3.group();
        for a in 0..6 {
            for b in 0..6 {
                for x in 0..6 {
                    let left = a * 6 + grp.op(b, x);
                    assert_eq!(m.get(left, b * 6 + x), Some(grp.op(a, b) * 6 + x));
                }
            }
        }
        assert!(check_peiffer(&px).holds);
        assert!(is_internal_category(&g).holds);
    }

    #[test]
    fn peiffer_failure_on_nonabelian_kernel() {
        let s3 = arc(FiniteRpoGroup::discrete("S3", symmetric(3)));
        let px = trivial_px(s3.clone(), arc(FiniteRpoGroup::zero()));
        let v = check_peiffer(&px);
        assert!(!v.holds);
        let g = pxmod_to_graph(&px).unwrap();
        let cat = is_internal_category(&g);
        assert_eq!(cat.witness_law(), Some("m is a homomorphism"));
        assert!(is_crossed_iff_category(&px).unwrap().holds);
        assert!(matches!(is_groupoid(&g), Err(Error::Precondition { .. })));
    }

    #[test]
    fn c4_inversion_module_fails_peiffer() {
        let c4 = arc(FiniteRpoGroup::discrete("C4", cyclic(4)));
        let c2 = arc(FiniteRpoGroup::discrete("C2", cyclic(2)));
        let d = RpoMorphism::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let mu = ActionMorphism::new(c2, c4, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap();
        let px = PrecrossedModule::new(d, mu).unwrap();
        let v = check_peiffer(&px);
        assert_eq!((v.witness.as_ref().unwrap().get("a"), v.witness.as_ref().unwrap().get("b")), (Some("1"), Some("1")));
        assert!(is_crossed_iff_category(&px).unwrap().holds);
    }

    #[test]
    fn px_failure_is_an_error() {
        let c2 = arc(FiniteRpoGroup::discrete("C2", cyclic(2)));
        let s3 = arc(FiniteRpoGroup::discrete("S3", symmetric(3)));
        // ∂ onto a transposition with trivial action breaks PX.
        let t = (1..6).find(|&a| s3.group().element_order(a) == 2).unwrap();
        let d = RpoMorphism::new(c2.clone(), s3.clone(), vec![0, t]).unwrap();
        let err = PrecrossedModule::new(d, ActionMorphism::trivial(s3, c2)).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn round_trips() {
        let c3 = arc(FiniteRpoGroup::new("C3", cyclic(3), &[0]).unwrap());
        let c2 = arc(FiniteRpoGroup::indiscrete("C2", cyclic(2)));
        let mu = ActionMorphism::new(c2.clone(), c3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let px = PrecrossedModule::new(RpoMorphism::zero(c3, c2), mu).unwrap();
        let g = pxmod_to_graph(&px).unwrap();
        let (h, eta_g) = eta(&g).unwrap();
        assert!(check_graph_iso(&g, &h, &eta_g).holds);
        let (q, eps) = epsilon(&px).unwrap();
        assert!(check_pxmod_iso(&px, &q, &eps).holds);
        for f in px_morphisms(&px, &px) {
            assert!(check_epsilon_naturality(&px, &px, &f).unwrap().holds);
            let gf = px_morphism_to_graph(&px, &px, &f);
            assert!(gf.check(&g, &g));
            assert!(check_eta_naturality(&g, &g, &gf).unwrap().holds);
        }
    }

    #[test]
    fn trivial_module_gives_product_graph() {
        let c3 = arc(FiniteRpoGroup::discrete("C3", cyclic(3)));
        let c2 = arc(FiniteRpoGroup::discrete("C2", cyclic(2)));
        let g = pxmod_to_graph(&trivial_px(c3.clone(), c2.clone())).unwrap();
        assert_eq!(*g.apex, c3.product(&c2));
        assert_eq!(g.d.map(), g.c.map());
    }

    #[test]
    fn composition_is_unique() {
        let g = ReflexiveGraph::indiscrete(arc(FiniteRpoGroup::new("C4", cyclic(4), &[0, 2]).unwrap()));
        let found = brute_force_compositions(&g);
        assert_eq!(found, vec![unique_m(&g)]);
        let s3 = arc(FiniteRpoGroup::discrete("S3", symmetric(3)));
        let g = pxmod_to_graph(&trivial_px(s3, arc(FiniteRpoGroup::zero()))).unwrap();
        assert!(brute_force_compositions(&g).is_empty());
    }

    #[test]
    fn effective_cone_matches_kernel_pair() {
        let c4 = arc(FiniteRpoGroup::new("C4", cyclic(4), &[0, 2]).unwrap());
        let c2 = arc(FiniteRpoGroup::new("C2", cyclic(2), &[0, 1]).unwrap());
        let incl = RpoMorphism::new(c2, c4, vec![0, 2]).unwrap();
        assert_eq!(effective_relation_cone(&incl).unwrap(), kernel_pair_cone(&incl).unwrap());
        let g = relation_graph(&incl).unwrap();
        assert!(is_effective(&g).unwrap().holds);
        let zero = arc(FiniteRpoGroup::zero());
        let z = RpoMorphism::zero(zero, c4_full());
        let cone = effective_relation_cone(&z).unwrap();
        assert_eq!(cone.to_vec(), c4_full().cone().iter().collect::<Vec<_>>());
    }

    fn c4_full() -> Arc<FiniteRpoGroup> {
        arc(FiniteRpoGroup::indiscrete("C4", cyclic(4)))
    }

    #[test]
    fn indiscrete_relation_is_effective() {
        let g = ReflexiveGraph::indiscrete(arc(FiniteRpoGroup::new("S3", symmetric(3), &[0, 3, 4]).unwrap()));
        assert!(is_effective(&g).unwrap().holds);
        let v = full_verdict(&g);
        assert!(v.is_schreier_graph.holds && v.is_internal_category.holds && v.is_groupoid.holds);
    }

    #[test]
    fn symbolic_examples() {
        let cfg = SampleConfig::default();
        let v2 = full_verdict_sampled(&examples::ex2(), &cfg).unwrap();
        assert!(v2.is_schreier_graph.holds && v2.is_internal_category.holds && !v2.is_groupoid.holds);
        assert_eq!(v2.is_groupoid.witness.as_ref().unwrap().get("σ(a)"), Some("(-1,1)"));
        let v3 = full_verdict_sampled(&examples::ex3(), &cfg).unwrap();
        assert!(!v3.is_schreier_graph.holds && v3.is_internal_category.holds && v3.is_groupoid.holds);
        let v4 = full_verdict_sampled(&examples::ex4(), &cfg).unwrap();
        assert!(!v4.is_schreier_graph.holds && v4.is_internal_category.holds && !v4.is_groupoid.holds);
        assert_eq!(v4.is_groupoid.witness.as_ref().unwrap().get("σ(a)"), Some("(2,1/2)"));
        let v1 = full_verdict_sampled(&examples::ex1(), &cfg).unwrap();
        assert!(!v1.is_schreier_graph.holds && v1.is_internal_category.holds && !v1.is_groupoid.holds);
    }
}

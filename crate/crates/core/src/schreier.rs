//! Schreier split epimorphisms, semidirect products with product cones,
//! the representing object `(Aut G, Aut(G)_≤)`, and S-centers.
//!
//! Semidirect products use `(k,x) + (k',x') = (k + μ(x)(k'), x + x')`, which
//! needs `μ(x + y) = μ(x) ∘ μ(y)`. The pair `(k, x)` has index `k * |X0| + x`.

use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finite::enumerate::{automorphisms, for_each_hom, homomorphisms};
use crate::finite::group::FiniteGroup;
use crate::finite::perm;
use crate::finite::rpo::{Cone, FiniteRpoGroup, RpoMorphism};
use crate::subobjects::{EffEqRelation, NormalSubobject};
use crate::symbolic::{SampleConfig, SymbolicPoint, SymbolicRpoGroup};
use crate::verdict::{Verdict, Witness};

/// A split epimorphism `d: total -> base` with section `e`.
#[derive(Clone, Debug)]
pub struct SplitPoint {
    pub total: Arc<FiniteRpoGroup>,
    pub base: Arc<FiniteRpoGroup>,
    pub d: RpoMorphism,
    pub e: RpoMorphism,
}

impl SplitPoint {
    /// Checks shapes, that `d` and `e` are morphisms, and `d∘e = id`.
    pub fn new(d: RpoMorphism, e: RpoMorphism) -> Result<Self> {
        if **d.dom() != **e.cod() || **d.cod() != **e.dom() {
            return Err(Error::CarrierMismatch("d and e do not form a point".into()));
        }
        for (name, f) in [("d", &d), ("e", &e)] {
            let v = f.check();
            if !v.holds {
                return Err(Error::precondition(format!("{name} is a morphism"), v.to_string()));
            }
        }
        if let Some(x) = e.dom().group().elements().find(|&x| d.apply(e.apply(x)) != x) {
            return Err(Error::precondition("d∘e = id", format!("fails at {}", e.dom().label(x))));
        }
        Ok(SplitPoint {
            total: d.dom().clone(),
            base: d.cod().clone(),
            d,
            e,
        })
    }

    /// `d = e = id`.
    pub fn identity(g: Arc<FiniteRpoGroup>) -> Self {
        SplitPoint {
            total: g.clone(),
            base: g.clone(),
            d: RpoMorphism::identity(g.clone()),
            e: RpoMorphism::identity(g),
        }
    }

    /// `a - e(d(a))`, the kernel part of `a`.
    pub fn kernel_part(&self, a: usize) -> usize {
        self.total.group().sub(a, self.e.apply(self.d.apply(a)))
    }
}

/// `a - e(d(a)) ∈ P₁` for every positive `a`.
pub fn is_schreier(p: &SplitPoint) -> Verdict {
    for a in p.total.cone().iter() {
        let k = p.kernel_part(a);
        if !p.total.is_positive(k) {
            let ed = p.e.apply(p.d.apply(a));
            return Verdict::fail(
                Witness::new("schreier")
                    .bind("a", p.total.label(a))
                    .with_expr(format!(
                        "{}-{}={} is not positive",
                        p.total.label(a),
                        p.total.label(ed),
                        p.total.label(k)
                    )),
            );
        }
    }
    Verdict::pass()
}

/// Sampled Schreier check on a symbolic point; designated elements come first.
pub fn is_schreier_sampled(p: &SymbolicPoint, cfg: &SampleConfig) -> Result<Verdict> {
    let g = &p.total.group;
    for a in p.total.positive_samples(cfg)? {
        let ed = p.e.apply(&p.d.apply(&a));
        let k = g.sub(&a, &ed);
        if !p.total.is_positive(&k) {
            return Ok(Verdict::fail(
                Witness::new("schreier")
                    .bind("a", &a)
                    .with_expr(format!("{a}-{ed}={k} is not positive")),
            )
            .sampled());
        }
    }
    Ok(Verdict::pass().sampled())
}

/// A group action of `base` on `target` by automorphisms, `act[x]` being
/// the permutation `μ(x)` of target elements.
#[derive(Clone, Debug)]
pub struct ActionMorphism {
    pub base: Arc<FiniteRpoGroup>,
    pub target: Arc<FiniteRpoGroup>,
    pub act: Vec<Vec<usize>>,
}

impl ActionMorphism {
    pub fn new(base: Arc<FiniteRpoGroup>, target: Arc<FiniteRpoGroup>, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != base.order() || act.iter().any(|r| r.len() != target.order()) {
            return Err(Error::structural(format!(
                "act must have {} rows of length {}",
                base.order(),
                target.order()
            )));
        }
        if let Some(&v) = act.iter().flatten().find(|&&v| v >= target.order()) {
            return Err(Error::structural(format!("act value {v} is out of range")));
        }
        Ok(ActionMorphism { base, target, act })
    }

    pub fn trivial(base: Arc<FiniteRpoGroup>, target: Arc<FiniteRpoGroup>) -> Self {
        let act = vec![(0..target.order()).collect(); base.order()];
        ActionMorphism { base, target, act }
    }

    /// Conjugation of `(G,P)` on itself: `μ(x)(k) = x + k - x`.
    pub fn conjugation(g: Arc<FiniteRpoGroup>) -> Self {
        let grp = g.group();
        let act = grp.elements().map(|x| grp.elements().map(|k| grp.conj(x, k)).collect()).collect();
        ActionMorphism { base: g.clone(), target: g, act }
    }

    #[inline]
    pub fn apply(&self, x: usize, k: usize) -> usize {
        self.act[x][k]
    }

    /// Each `μ(x)` is a group automorphism, `μ(x+y) = μ(x)∘μ(y)`, and
    /// positive `x` act by monotone automorphisms.
    pub fn check(&self) -> Verdict {
        let (xg, kg) = (self.base.group(), self.target.group());
        for x in xg.elements() {
            let f = &self.act[x];
            if !perm::is_permutation(f) {
                return Verdict::fail(Witness::new("μ(x) is bijective").bind("x", self.base.label(x)));
            }
            for a in kg.elements() {
                for b in kg.elements() {
                    if f[kg.op(a, b)] != kg.op(f[a], f[b]) {
                        return Verdict::fail(
                            Witness::new("μ(x) is a homomorphism")
                                .bind("x", self.base.label(x))
                                .bind("a", self.target.label(a))
                                .bind("b", self.target.label(b)),
                        );
                    }
                }
            }
        }
        for x in xg.elements() {
            for y in xg.elements() {
                let xy = xg.op(x, y);
                if let Some(k) = kg.elements().find(|&k| self.act[xy][k] != self.act[x][self.act[y][k]]) {
                    return Verdict::fail(
                        Witness::new("μ(x+y) = μ(x)∘μ(y)")
                            .bind("x", self.base.label(x))
                            .bind("y", self.base.label(y))
                            .bind("k", self.target.label(k)),
                    );
                }
            }
        }
        for p in self.base.cone().iter() {
            if let Some(q) = self.target.cone().iter().find(|&q| !self.target.is_positive(self.act[p][q])) {
                return Verdict::fail(
                    Witness::new("μ(p) is monotone")
                        .bind("p", self.base.label(p))
                        .bind("q", self.target.label(q)),
                );
            }
        }
        Verdict::pass()
    }
}

/// The semidirect product group `target ⋊_μ base`, unchecked.
pub fn semidirect_group(mu: &ActionMorphism) -> FiniteGroup {
    let (kg, xg) = (mu.target.group(), mu.base.group());
    let m = xg.order();
    let g = FiniteGroup::from_fn(kg.order() * m, |a, b| {
        let ((k, x), (l, y)) = ((a / m, a % m), (b / m, b % m));
        kg.op(k, mu.act[x][l]) * m + xg.op(x, y)
    });
    let labels = (0..kg.order() * m)
        .map(|a| format!("({},{})", mu.target.label(a / m), mu.base.label(a % m)))
        .collect();
    g.with_labels(labels)
}

/// `P₁ × P₀` as a set of semidirect-product indices.
pub fn product_cone(mu: &ActionMorphism) -> BitSet {
    let m = mu.base.order();
    BitSet::from_indices(
        mu.target.order() * m,
        mu.target.cone().iter().flat_map(|k| mu.base.cone().iter().map(move |x| k * m + x)),
    )
}

/// The point `p₁: X₁ ⋊_μ X₀ -> X₀` with section `i₁` and cone `P₁ × P₀`.
pub fn semidirect(mu: &ActionMorphism) -> Result<SplitPoint> {
    let v = mu.check();
    if !v.holds {
        return Err(Error::precondition("action by monotone automorphisms", v.to_string()));
    }
    let g = semidirect_group(mu);
    let total = Arc::new(FiniteRpoGroup::from_parts(
        format!("{}⋊{}", mu.target.name(), mu.base.name()),
        g,
        Cone::new(product_cone(mu)),
    ));
    let m = mu.base.order();
    let d = RpoMorphism::new(total.clone(), mu.base.clone(), (0..total.order()).map(|a| a % m).collect())?;
    let e = RpoMorphism::new(mu.base.clone(), total.clone(), (0..m).collect())?;
    SplitPoint::new(d, e)
}

/// `i₀: X₁ -> X₁ ⋊ X₀`, `k ↦ (k, 0)`.
pub fn semidirect_i0(p: &SplitPoint, target: Arc<FiniteRpoGroup>) -> Result<RpoMorphism> {
    let m = p.base.order();
    RpoMorphism::new(target.clone(), p.total.clone(), (0..target.order()).map(|k| k * m).collect())
}

/// Decomposition of a point as `K ⋊ X₀` via `a ↦ (a - ed(a), d(a))`.
#[derive(Clone, Debug)]
pub struct PointClassification {
    pub kernel: Arc<FiniteRpoGroup>,
    /// `μ(x)(k) = e(x) + k - e(x)` on the kernel.
    pub action: ActionMorphism,
    /// Index in `K ⋊ X₀` of each element of the total group.
    pub transport: Vec<usize>,
    /// Transported cone.
    pub cone: BitSet,
    pub p_prod: BitSet,
    pub p_lex: BitSet,
    /// `P_prod ⊆ P ⊆ P_lex`.
    pub within_bounds: bool,
    /// `P = P_prod`.
    pub is_product: bool,
}

pub fn classify_point(p: &SplitPoint) -> PointClassification {
    let (ker, inc) = p.d.kernel();
    let g = p.total.group();
    let mut kpos = vec![usize::MAX; p.total.order()];
    for (i, &a) in inc.map().iter().enumerate() {
        kpos[a] = i;
    }
    let act = p
        .base
        .group()
        .elements()
        .map(|x| {
            let ex = p.e.apply(x);
            inc.map().iter().map(|&k| kpos[g.conj(ex, k)]).collect()
        })
        .collect();
    let action = ActionMorphism {
        base: p.base.clone(),
        target: ker.clone(),
        act,
    };
    let m = p.base.order();
    let transport: Vec<usize> = g.elements().map(|a| kpos[p.kernel_part(a)] * m + p.d.apply(a)).collect();
    let n = p.total.order();
    let cone = BitSet::from_indices(n, p.total.cone().iter().map(|a| transport[a]));
    let p_prod = product_cone(&action);
    let p00: Vec<usize> = p.base.cone().iter().filter(|&x| p.base.is_positive(p.base.group().neg(x))).collect();
    let p_lex = BitSet::from_indices(
        n,
        (0..n).filter(|&i| {
            let (k, x) = (i / m, i % m);
            (ker.is_positive(k) && p00.contains(&x)) || (p.base.is_positive(x) && !p00.contains(&x))
        }),
    );
    PointClassification {
        within_bounds: p_prod.is_subset(&cone) && cone.is_subset(&p_lex),
        is_product: cone == p_prod,
        kernel: ker,
        action,
        transport,
        cone,
        p_prod,
        p_lex,
    }
}

/// `(Aut G, Aut(G)_≤)`; `f + g = f ∘ g`, identity first.
#[derive(Clone, Debug)]
pub struct AutRpo {
    pub rpo: Arc<FiniteRpoGroup>,
    pub auts: Vec<Vec<usize>>,
}

impl AutRpo {
    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        self.auts.iter().position(|a| a == f)
    }
}

pub fn aut_rpo(g: &FiniteRpoGroup) -> AutRpo {
    let auts = automorphisms(g.group());
    let idx = |f: &Vec<usize>| auts.binary_search(f).expect("automorphisms compose");
    let table = FiniteGroup::from_fn(auts.len(), |a, b| idx(&perm::compose(&auts[a], &auts[b])));
    let cone = Cone::from_indices(
        auts.len(),
        (0..auts.len()).filter(|&i| g.cone().iter().all(|p| g.is_positive(auts[i][p]))),
    );
    AutRpo {
        rpo: Arc::new(FiniteRpoGroup::from_parts(format!("Aut({})", g.name()), table, cone)),
        auts,
    }
}

/// The action corresponding to a morphism `y -> ⟨x⟩`.
pub fn action_of(aut: &AutRpo, x: Arc<FiniteRpoGroup>, y: Arc<FiniteRpoGroup>, mu: &[usize]) -> ActionMorphism {
    ActionMorphism {
        act: mu.iter().map(|&i| aut.auts[i].clone()).collect(),
        base: y,
        target: x,
    }
}

/// Whether two points with the same kernel and codomain are isomorphic as
/// split extensions, by an isomorphism that is the identity on both ends.
pub fn split_extensions_isomorphic(a: &SplitPoint, a_i0: &RpoMorphism, b: &SplitPoint, b_i0: &RpoMorphism) -> bool {
    if a.total.order() != b.total.order() || a.total.cone().len() != b.total.cone().len() {
        return false;
    }
    let (ga, gb) = (a.total.group(), b.total.group());
    // Forced: ψ(i0(k) + e(y)) = i0'(k) + e'(y).
    let mut psi = vec![usize::MAX; ga.order()];
    for k in a_i0.dom().group().elements() {
        for y in a.base.group().elements() {
            let src = ga.op(a_i0.apply(k), a.e.apply(y));
            let dst = gb.op(b_i0.apply(k), b.e.apply(y));
            if psi[src] != usize::MAX && psi[src] != dst {
                return false;
            }
            psi[src] = dst;
        }
    }
    if !perm::is_permutation(&psi) {
        return false;
    }
    let hom = ga.elements().all(|u| ga.elements().all(|v| psi[ga.op(u, v)] == gb.op(psi[u], psi[v])));
    hom && a.total.cone().iter().all(|p| b.total.is_positive(psi[p]))
}

#[derive(Clone, Debug)]
pub struct ActionRepReport {
    /// Monotone morphisms `y -> ⟨x⟩`.
    pub morphisms: usize,
    /// Isomorphism classes of Schreier split extensions found by cone search.
    pub classes: usize,
    pub verdict: Verdict,
}

pub const ACTION_REP_GUARD: usize = 64;

/// Compares monotone morphisms `y -> ⟨x⟩` with Schreier split extensions of
/// `y` by `x`, the latter found by searching all group actions and all
/// admissible cones on the semidirect product.
pub fn check_action_rep(x: &Arc<FiniteRpoGroup>, y: &Arc<FiniteRpoGroup>) -> Result<ActionRepReport> {
    let size = x.order() * y.order();
    if size > ACTION_REP_GUARD {
        return Err(Error::Guard {
            what: "|x|·|y|".into(),
            actual: size,
            limit: ACTION_REP_GUARD,
        });
    }
    let aut = aut_rpo(x);
    // Side A: monotone morphisms into ⟨x⟩.
    let side_a: Vec<Vec<usize>> = homomorphisms(y.group(), aut.rpo.group())
        .into_iter()
        .filter(|mu| y.cone().iter().all(|p| aut.rpo.is_positive(mu[p])))
        .collect();

    // Side B: every group action, every admissible cone, keep Schreier points.
    let actions = homomorphisms(y.group(), aut.rpo.group());
    let found: Vec<(SplitPoint, RpoMorphism)> = actions
        .par_iter()
        .flat_map_iter(|phi| {
            let mu = action_of(&aut, x.clone(), y.clone(), phi);
            let g = semidirect_group(&mu);
            let m = y.order();
            let h0 = g.generate(
                x.cone().iter().map(|k| k * m).chain(y.cone().iter()),
            );
            let upper = BitSet::from_indices(g.order(), (0..g.order()).filter(|&i| y.is_positive(i % m)));
            let kernel_cone = BitSet::from_indices(g.order(), x.cone().iter().map(|k| k * m));
            let kernel = BitSet::from_indices(g.order(), (0..x.order()).map(|k| k * m));
            cones_between(&g, &h0, &upper, |h| h.intersection(&kernel).is_subset(&kernel_cone))
                .into_iter()
                .filter_map(|p| {
                    let total = Arc::new(FiniteRpoGroup::from_parts("E", g.clone(), Cone::new(p)));
                    let d = RpoMorphism::new(total.clone(), y.clone(), (0..total.order()).map(|a| a % m).collect()).ok()?;
                    let e = RpoMorphism::new(y.clone(), total.clone(), (0..m).collect()).ok()?;
                    let pt = SplitPoint::new(d, e).ok()?;
                    let i0 = semidirect_i0(&pt, x.clone()).ok()?;
                    is_schreier(&pt).holds.then_some((pt, i0))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut classes: Vec<&(SplitPoint, RpoMorphism)> = Vec::new();
    for cand in &found {
        if !classes.iter().any(|c| split_extensions_isomorphic(&c.0, &c.1, &cand.0, &cand.1)) {
            classes.push(cand);
        }
    }

    // Canonical map μ ↦ [semidirect(μ)], checked to be a bijection.
    let mut hit = vec![false; classes.len()];
    for mu in &side_a {
        let action = action_of(&aut, x.clone(), y.clone(), mu);
        let pt = semidirect(&action)?;
        let i0 = semidirect_i0(&pt, x.clone())?;
        let Some(ci) = classes.iter().position(|c| split_extensions_isomorphic(&pt, &i0, &c.0, &c.1)) else {
            let w = Witness::new("canonical map lands in a class").bind("μ", format!("{mu:?}"));
            return Ok(ActionRepReport { morphisms: side_a.len(), classes: classes.len(), verdict: Verdict::fail(w) });
        };
        if std::mem::replace(&mut hit[ci], true) {
            let w = Witness::new("canonical map is injective").bind("μ", format!("{mu:?}"));
            return Ok(ActionRepReport { morphisms: side_a.len(), classes: classes.len(), verdict: Verdict::fail(w) });
        }
    }
    let verdict = if side_a.len() == classes.len() && hit.iter().all(|&h| h) {
        Verdict::pass()
    } else {
        Verdict::fail(
            Witness::new("counts agree")
                .bind("morphisms", side_a.len())
                .bind("classes", classes.len()),
        )
    };
    Ok(ActionRepReport {
        morphisms: side_a.len(),
        classes: classes.len(),
        verdict,
    })
}

/// Subgroups `H` with `lower ⊆ H ⊆ upper` and `keep(H)`; `lower` must be
/// a subgroup and `keep` must fail on every supergroup of a failing `H`.
pub fn cones_between(g: &FiniteGroup, lower: &BitSet, upper: &BitSet, keep: impl Fn(&BitSet) -> bool) -> Vec<BitSet> {
    if !lower.is_subset(upper) || !keep(lower) {
        return Vec::new();
    }
    let cyclic: Vec<BitSet> = {
        let mut v: Vec<BitSet> = upper
            .iter()
            .map(|a| g.generate([a]))
            .filter(|c| c.is_subset(upper) && keep(c))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let mut seen = std::collections::BTreeSet::from([lower.clone()]);
    let mut queue = vec![lower.clone()];
    while let Some(h) = queue.pop() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let j = g.join(&h, c);
            if j.is_subset(upper) && keep(&j) && seen.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    seen.into_iter().collect()
}

/// Pullback of a point along `f: z -> base`: total `{(a,w) : d(a) = f(w)}`
/// with cone the positive pairs, `d' = second projection`, `e'(w) = (e(f(w)), w)`.
pub fn pullback_point(p: &SplitPoint, f: &RpoMorphism) -> Result<SplitPoint> {
    if **f.cod() != *p.base {
        return Err(Error::CarrierMismatch("f must land in the base of the point".into()));
    }
    let z = f.dom().clone();
    let prod = Arc::new(p.total.product(&z));
    let m = z.order();
    let set = BitSet::from_indices(
        prod.order(),
        (0..prod.order()).filter(|&i| p.d.apply(i / m) == f.apply(i % m)),
    );
    let (total, inc) = prod.restrict(&set, "pullback");
    let mut pos = vec![usize::MAX; prod.order()];
    for (i, &a) in inc.map().iter().enumerate() {
        pos[a] = i;
    }
    let d = RpoMorphism::new(total.clone(), z.clone(), inc.map().iter().map(|&i| i % m).collect())?;
    let e = RpoMorphism::new(
        z.clone(),
        total.clone(),
        (0..m).map(|w| pos[p.e.apply(f.apply(w)) * m + w]).collect(),
    )?;
    SplitPoint::new(d, e)
}

/// The two projection points `R -> X` (first and second projection, split
/// by the diagonal) of an effective relation.
pub fn relation_points(r: &EffEqRelation) -> Result<(SplitPoint, SplitPoint)> {
    let (rel, pairs) = r.to_rpo();
    let x = r.carrier().clone();
    let diag: Vec<usize> = x
        .group()
        .elements()
        .map(|a| pairs.iter().position(|&p| p == (a, a)).expect("reflexive"))
        .collect();
    let e = RpoMorphism::new(x.clone(), rel.clone(), diag)?;
    let d0 = RpoMorphism::new(rel.clone(), x.clone(), pairs.iter().map(|p| p.0).collect())?;
    let d1 = RpoMorphism::new(rel.clone(), x.clone(), pairs.iter().map(|p| p.1).collect())?;
    Ok((SplitPoint::new(d0, e.clone())?, SplitPoint::new(d1, e)?))
}

/// The indiscrete point of `(G,P)` in semidirect form: `G ⋊_conj G` with
/// cone `{(k,b) : b ∈ P, k + b ∈ P}`.
pub fn indiscrete_point(g: &Arc<FiniteRpoGroup>) -> Result<SplitPoint> {
    let mu = ActionMorphism::conjugation(g.clone());
    let grp = semidirect_group(&mu);
    let n = g.order();
    let cone = BitSet::from_indices(
        n * n,
        (0..n * n).filter(|&i| {
            let (k, b) = (i / n, i % n);
            g.is_positive(b) && g.is_positive(g.group().op(k, b))
        }),
    );
    let total = Arc::new(FiniteRpoGroup::from_parts(format!("∇{}", g.name()), grp, Cone::new(cone)));
    let d = RpoMorphism::new(total.clone(), g.clone(), (0..n * n).map(|i| i % n).collect())?;
    let e = RpoMorphism::new(g.clone(), total, (0..n).collect())?;
    SplitPoint::new(d, e)
}

#[derive(Clone, Debug)]
pub enum SCenter {
    Center(NormalSubobject),
    Refused(Verdict),
}

/// The kernel of conjugation `G -> ⟨G⟩`, i.e. `Z(G)` with cone `Z(G) ∩ P`,
/// provided the indiscrete point is Schreier.
pub fn s_center(g: &Arc<FiniteRpoGroup>) -> Result<SCenter> {
    let v = is_schreier(&indiscrete_point(g)?);
    if !v.holds {
        let p = g.cone().iter().find(|&p| !g.is_positive(g.group().neg(p))).unwrap_or(0);
        return Ok(SCenter::Refused(Verdict::fail(
            Witness::new("cone is a group").bind("p", g.label(p)).bind("-p", g.label(g.group().neg(p))),
        )));
    }
    let mu = ActionMorphism::conjugation(g.clone());
    let id: Vec<usize> = (0..g.order()).collect();
    let ker = BitSet::from_indices(g.order(), (0..g.order()).filter(|&x| mu.act[x] == id));
    Ok(SCenter::Center(NormalSubobject::new(g.clone(), ker)?))
}

#[derive(Clone, Debug)]
pub enum SymbolicSCenter {
    /// Abelian carrier with a (sampled) group cone: the whole object.
    Whole(Verdict),
    Refused(Verdict),
}

/// Symbolic S-center: refuses when a sampled positive element has no
/// positive inverse; otherwise only abelian carriers are handled.
pub fn s_center_sampled(g: &SymbolicRpoGroup, cfg: &SampleConfig) -> Result<SymbolicSCenter> {
    for p in g.positive_samples(cfg)? {
        let np = g.group.neg(&p);
        if !g.is_positive(&np) {
            return Ok(SymbolicSCenter::Refused(
                Verdict::fail(
                    Witness::new("cone is a group")
                        .bind("p", &p)
                        .with_expr(format!("{p} is positive but -{p}={np} is not")),
                )
                .sampled(),
            ));
        }
    }
    if g.group.is_abelian() {
        Ok(SymbolicSCenter::Whole(Verdict::pass().sampled()))
    } else {
        Err(Error::precondition("abelian carrier", format!("the center of {} is not computed symbolically", g.group)))
    }
}

/// First morphism `y -> ⟨x⟩` whose semidirect product is not Schreier;
/// always `None` (used as a regression search).
pub fn find_non_schreier_semidirect(x: &Arc<FiniteRpoGroup>, y: &Arc<FiniteRpoGroup>) -> Option<Vec<usize>> {
    let aut = aut_rpo(x);
    for_each_hom(y.group(), aut.rpo.group(), false, |mu| {
        if y.cone().iter().any(|p| !aut.rpo.is_positive(mu[p])) {
            return ControlFlow::Continue(());
        }
        let pt = semidirect(&action_of(&aut, x.clone(), y.clone(), mu)).expect("valid action");
        if is_schreier(&pt).holds {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(mu.to_vec())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog::{cyclic, symmetric};

    fn arc(g: FiniteRpoGroup) -> Arc<FiniteRpoGroup> {
        Arc::new(g)
    }

    #[test]
    fn identity_point_is_schreier() {
        let g = arc(FiniteRpoGroup::indiscrete("C3", cyclic(3)));
        assert!(is_schreier(&SplitPoint::identity(g)).holds);
    }

    #[test]
    fn trivial_action_gives_product() {
        let x = arc(FiniteRpoGroup::new("C3", cyclic(3), &[0]).unwrap());
        let y = arc(FiniteRpoGroup::indiscrete("C2", cyclic(2)));
        let p = semidirect(&ActionMorphism::trivial(y.clone(), x.clone())).unwrap();
        assert_eq!(*p.total, x.product(&y));
        assert!(is_schreier(&p).holds);
    }

    #[test]
    fn inversion_action_on_c3() {
        let x = arc(FiniteRpoGroup::new("C3", cyclic(3), &[0]).unwrap());
        let y = arc(FiniteRpoGroup::indiscrete("C2", cyclic(2)));
        let mu = ActionMorphism::new(y.clone(), x.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let p = semidirect(&mu).unwrap();
        assert_eq!(p.total.order(), 6);
        assert!(!p.total.group().is_abelian());
        assert!(is_schreier(&p).holds);
        let c = classify_point(&p);
        assert!(c.is_product && c.within_bounds);
        assert_eq!(c.action.act, mu.act);
        let i0 = semidirect_i0(&p, x).unwrap();
        assert!(i0.check().holds);
        assert!(p.e.check().holds);
    }

    #[test]
    fn bad_action_is_a_precondition_error() {
        let x = arc(FiniteRpoGroup::discrete("C3", cyclic(3)));
        let y = arc(FiniteRpoGroup::discrete("C3b", cyclic(3)));
        let mu = ActionMorphism::new(y, x, vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 1, 2]]).unwrap();
        assert!(matches!(semidirect(&mu), Err(Error::Precondition { .. })));
    }

    #[test]
    fn aut_rpo_examples() {
        let v4 = FiniteRpoGroup::new("V4", cyclic(2).product(&cyclic(2)), &[0, 1]).unwrap();
        let a = aut_rpo(&v4);
        assert_eq!(a.rpo.order(), 6);
        assert_eq!(a.rpo.cone().len(), 2);
        assert!(!a.rpo.group().is_abelian());
        assert!(a.rpo.validate().holds);
        assert_eq!(aut_rpo(&FiniteRpoGroup::zero()).rpo.order(), 1);
        let c3 = aut_rpo(&FiniteRpoGroup::discrete("C3", cyclic(3)));
        assert_eq!((c3.rpo.order(), c3.rpo.cone().len()), (2, 2));
    }

    #[test]
    fn action_rep_small_cases() {
        let z = arc(FiniteRpoGroup::zero());
        let c2f = arc(FiniteRpoGroup::indiscrete("C2", cyclic(2)));
        let c3 = arc(FiniteRpoGroup::discrete("C3", cyclic(3)));
        let r = check_action_rep(&z, &c2f).unwrap();
        assert_eq!((r.morphisms, r.classes), (1, 1));
        let r = check_action_rep(&c2f, &c2f).unwrap();
        assert_eq!((r.morphisms, r.classes), (1, 1));
        assert!(r.verdict.holds);
        let r = check_action_rep(&c3, &c2f).unwrap();
        assert_eq!((r.morphisms, r.classes), (2, 2));
        assert!(r.verdict.holds);
    }

    #[test]
    fn action_rep_guard() {
        let big = arc(FiniteRpoGroup::discrete("C9", cyclic(9)));
        assert!(matches!(check_action_rep(&big, &big), Err(Error::Guard { .. })));
    }

    #[test]
    fn s_centers() {
        let c4 = arc(FiniteRpoGroup::new("C4", cyclic(4), &[0, 2]).unwrap());
        match s_center(&c4).unwrap() {
            SCenter::Center(z) => {
                assert_eq!(z.order(), 4);
                assert_eq!(z.cone().count(), 2);
            }
            SCenter::Refused(_) => panic!("finite cones are groups"),
        }
        let s3 = arc(FiniteRpoGroup::discrete("S3", symmetric(3)));
        match s_center(&s3).unwrap() {
            SCenter::Center(z) => assert_eq!(z.order(), 1),
            SCenter::Refused(_) => panic!(),
        }
    }

    #[test]
    fn symbolic_center_refuses_naturals() {
        let g = crate::symbolic::examples::z_n();
        match s_center_sampled(&g, &SampleConfig::default()).unwrap() {
            SymbolicSCenter::Refused(v) => assert_eq!(v.witness.unwrap().get("p"), Some("1")),
            SymbolicSCenter::Whole(_) => panic!("ℕ is not a group"),
        }
        let t = crate::symbolic::examples::z_triv();
        assert!(matches!(s_center_sampled(&t, &SampleConfig::default()).unwrap(), SymbolicSCenter::Whole(_)));
    }

    #[test]
    fn pullback_of_semidirect_point() {
        let x = arc(FiniteRpoGroup::new("C3", cyclic(3), &[0]).unwrap());
        let y = arc(FiniteRpoGroup::indiscrete("C2", cyclic(2)));
        let mu = ActionMorphism::new(y.clone(), x, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let p = semidirect(&mu).unwrap();
        let z = arc(FiniteRpoGroup::indiscrete("C4", cyclic(4)));
        let f = RpoMorphism::new(z, y, vec![0, 1, 0, 1]).unwrap();
        let q = pullback_point(&p, &f).unwrap();
        assert_eq!(q.total.order(), 12);
        assert!(is_schreier(&q).holds);
    }
}

//! Right-preordered groups as models of a Horn theory.
//!
//! A model has a constant `0`, a binary `+` and unary `-`, `p0`, `p1`, `i`
//! (and optionally `▷`). The functor `F` sends `(G, P)` to the carrier
//! `G × P`; the functor `G` takes the group `p0(X)` with cone `i(p1(X))`.
//!
//! [`to_model`] uses `i(a,b) = (b, 1)` with `1` the unit of the cone, which
//! is what (P3) needs: `i p1(a,x) = i(0,x) = (x,1)`. Sending `i(a,b)` to
//! `(b, 0)` would put `0` in the second slot, which need not be in the cone.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::finite::enumerate::for_each_hom;
use crate::finite::group::FiniteGroup;
use crate::finite::rpo::{Cone, FiniteRpoGroup};
use crate::verdict::{Verdict, Witness};

/// A finite Σ-algebra (or Σ′-algebra when `tri` is present).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaAlgebra {
    n: usize,
    zero: usize,
    plus: Vec<usize>,
    neg: Vec<usize>,
    proj0: Vec<usize>,
    proj1: Vec<usize>,
    inj: Vec<usize>,
    tri: Option<Vec<usize>>,
    labels: Option<Vec<String>>,
}

pub struct SigmaOps {
    pub zero: usize,
    pub plus: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub proj0: Vec<usize>,
    pub proj1: Vec<usize>,
    pub inj: Vec<usize>,
    pub tri: Option<Vec<usize>>,
}

impl SigmaAlgebra {
    /// Checks that every operation is total on `0..carrier`.
    pub fn new(carrier: usize, ops: SigmaOps) -> Result<Self> {
        let range = |what: &str, v: usize| {
            if v < carrier {
                Ok(())
            } else {
                Err(Error::structural(format!("{what} value {v} is out of range 0..{carrier}")))
            }
        };
        if carrier == 0 {
            return Err(Error::structural("the carrier must be nonempty"));
        }
        range("zero", ops.zero)?;
        if ops.plus.len() != carrier || ops.plus.iter().any(|r| r.len() != carrier) {
            return Err(Error::structural(format!("plus must be a {carrier}×{carrier} table")));
        }
        let mut plus = Vec::with_capacity(carrier * carrier);
        for row in &ops.plus {
            for &v in row {
                range("plus", v)?;
            }
            plus.extend_from_slice(row);
        }
        let unary = |what: &str, v: &Vec<usize>| -> Result<()> {
            if v.len() != carrier {
                return Err(Error::structural(format!("{what} has {} entries, expected {carrier}", v.len())));
            }
            v.iter().try_for_each(|&x| range(what, x))
        };
        unary("neg", &ops.neg)?;
        unary("proj0", &ops.proj0)?;
        unary("proj1", &ops.proj1)?;
        unary("inj", &ops.inj)?;
        if let Some(t) = &ops.tri {
            unary("tri", t)?;
        }
        Ok(SigmaAlgebra {
            n: carrier,
            zero: ops.zero,
            plus,
            neg: ops.neg,
            proj0: ops.proj0,
            proj1: ops.proj1,
            inj: ops.inj,
            tri: ops.tri,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn ops(&self) -> SigmaOps {
        SigmaOps {
            zero: self.zero,
            plus: self.plus.chunks(self.n).map(|r| r.to_vec()).collect(),
            neg: self.neg.clone(),
            proj0: self.proj0.clone(),
            proj1: self.proj1.clone(),
            inj: self.inj.clone(),
            tri: self.tri.clone(),
        }
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.plus[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn p0(&self, a: usize) -> usize {
        self.proj0[a]
    }

    #[inline]
    pub fn p1(&self, a: usize) -> usize {
        self.proj1[a]
    }

    #[inline]
    pub fn inj(&self, a: usize) -> usize {
        self.inj[a]
    }

    pub fn tri(&self) -> Option<&[usize]> {
        self.tri.as_deref()
    }

    /// `a - b = a + (-b)`.
    pub fn minus(&self, a: usize, b: usize) -> usize {
        self.plus(a, self.neg(b))
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Replaces `inj`; used to build deliberately broken models.
    pub fn with_inj(mut self, inj: Vec<usize>) -> Result<Self> {
        let ops = SigmaOps { inj, ..self.ops() };
        let labels = self.labels.take();
        let mut m = SigmaAlgebra::new(self.n, ops)?;
        m.labels = labels;
        Ok(m)
    }

    fn image(&self, f: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for &v in f {
            seen[v] = true;
        }
        let mut out: Vec<usize> = (0..self.n).filter(|&v| seen[v] && v != self.zero).collect();
        if seen[self.zero] {
            out.insert(0, self.zero);
        }
        out
    }

    /// `p0(X)`, zero first.
    pub fn x0(&self) -> Vec<usize> {
        self.image(&self.proj0)
    }

    /// `p1(X)`, zero first.
    pub fn x1(&self) -> Vec<usize> {
        self.image(&self.proj1)
    }
}

/// One verdict per axiom.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub m: Verdict,
    pub p1: Verdict,
    pub p2: Verdict,
    pub p3: Verdict,
    pub g: Verdict,
    pub inj: Verdict,
    pub c1: Option<Verdict>,
    pub c2: Option<Verdict>,
}

impl AxiomReport {
    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        let mut out = vec![
            ("M", &self.m),
            ("P1", &self.p1),
            ("P2", &self.p2),
            ("P3", &self.p3),
            ("G", &self.g),
            ("Inj", &self.inj),
        ];
        if let Some(c1) = &self.c1 {
            out.push(("C1", c1));
        }
        if let Some(c2) = &self.c2 {
            out.push(("C2", c2));
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.holds)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Verdict)> {
        self.entries().into_iter().find(|(_, v)| !v.holds)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.entries().into_iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{name}: {v}")?;
        }
        Ok(())
    }
}

fn first_unary(m: &SigmaAlgebra, law: &str, ok: impl Fn(usize) -> bool) -> Verdict {
    match (0..m.n).find(|&a| !ok(a)) {
        None => Verdict::pass(),
        Some(a) => Verdict::fail(Witness::new(law).bind("a", m.label(a))),
    }
}

fn first_binary(m: &SigmaAlgebra, law: &str, ok: impl Fn(usize, usize) -> bool) -> Verdict {
    for a in 0..m.n {
        for b in 0..m.n {
            if !ok(a, b) {
                return Verdict::fail(Witness::new(law).bind("a", m.label(a)).bind("b", m.label(b)));
            }
        }
    }
    Verdict::pass()
}

fn check_m(m: &SigmaAlgebra) -> Verdict {
    let z = m.zero;
    let v = first_unary(m, "M: zero is a unit", |a| m.plus(z, a) == a && m.plus(a, z) == a);
    if !v.holds {
        return v;
    }
    for a in 0..m.n {
        for b in 0..m.n {
            let ab = m.plus(a, b);
            for c in 0..m.n {
                if m.plus(ab, c) != m.plus(a, m.plus(b, c)) {
                    return Verdict::fail(
                        Witness::new("M: associativity")
                            .bind("a", m.label(a))
                            .bind("b", m.label(b))
                            .bind("c", m.label(c)),
                    );
                }
            }
        }
    }
    for (name, f) in [("p0", &m.proj0), ("p1", &m.proj1), ("i", &m.inj)] {
        if f[z] != z {
            return Verdict::fail(Witness::new(format!("M: {name}(0)=0")));
        }
        let v = first_binary(m, &format!("M: {name} is additive"), |a, b| {
            f[m.plus(a, b)] == m.plus(f[a], f[b])
        });
        if !v.holds {
            return v;
        }
    }
    Verdict::pass()
}

/// Evaluates every axiom over all tuples of the carrier. (Inj) is checked as
/// an implication over all pairs.
pub fn check_axioms(m: &SigmaAlgebra) -> AxiomReport {
    let z = m.zero;
    let tri = m.tri.as_ref();
    AxiomReport {
        m: check_m(m),
        p1: first_unary(m, "P1", |a| {
            m.plus(m.p0(a), m.p1(a)) == a && m.plus(m.p1(a), m.p0(a)) == a
        }),
        p2: first_unary(m, "P2", |a| {
            m.neg(m.p1(a)) == z && m.p1(m.inj(a)) == z && m.p0(m.p1(a)) == z && m.p1(m.p0(a)) == z
        }),
        p3: first_unary(m, "P3", |a| m.inj(m.p1(a)) == m.p0(m.inj(a))),
        g: first_unary(m, "G", |a| {
            m.plus(a, m.neg(a)) == m.p1(a) && m.plus(m.neg(a), a) == m.p1(a)
        }),
        inj: first_binary(m, "Inj", |a, b| m.inj(a) != m.inj(b) || m.p1(a) == m.p1(b)),
        c1: tri.map(|t| {
            first_unary(m, "C1", |a| {
                let a0 = m.p0(a);
                m.inj(t[a]) == m.minus(m.plus(a0, m.inj(m.p1(a))), a0)
            })
        }),
        c2: tri.map(|t| first_unary(m, "C2", |a| m.p0(t[a]) == z)),
    }
}

fn require_axioms(m: &SigmaAlgebra) -> Result<()> {
    match check_axioms(m).first_failure() {
        None => Ok(()),
        Some((name, v)) => Err(Error::precondition(
            "model satisfies the axioms",
            format!("axiom {name} fails: {v}"),
        )),
    }
}

/// Index of `(x, j)` in the carrier of `F(G,P)`: `x * |P| + j`, where `j`
/// indexes the cone in ascending order (so `j = 0` is the unit).
pub fn model_index(g: &FiniteRpoGroup, x: usize, j: usize) -> usize {
    x * g.cone().len() + j
}

/// The functor `F`: carrier `G × P` with `(a,b)+(c,d) = (a+c, b+d)`,
/// `-(a,b) = (-a,1)`, `p0(a,b) = (a,1)`, `p1(a,b) = (0,b)`, `i(a,b) = (b,1)`.
pub fn to_model(g: &FiniteRpoGroup) -> SigmaAlgebra {
    let grp = g.group();
    let cone: Vec<usize> = g.cone().iter().collect();
    let m = cone.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (j, &p) in cone.iter().enumerate() {
        pos[p] = j;
    }
    let n = g.order() * m;
    let split = |a: usize| (a / m, a % m);
    let plus = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let ((x, j), (y, k)) = (split(a), split(b));
                    grp.op(x, y) * m + pos[grp.op(cone[j], cone[k])]
                })
                .collect()
        })
        .collect();
    let ops = SigmaOps {
        zero: 0,
        plus,
        neg: (0..n).map(|a| grp.neg(a / m) * m).collect(),
        proj0: (0..n).map(|a| (a / m) * m).collect(),
        proj1: (0..n).map(|a| a % m).collect(),
        inj: (0..n).map(|a| cone[a % m] * m).collect(),
        tri: None,
    };
    let labels = (0..n)
        .map(|a| format!("({},{})", g.label(a / m), g.label(cone[a % m])))
        .collect();
    SigmaAlgebra::new(n, ops).expect("well-formed").with_labels(labels)
}

/// The functor `G`: the group `p0(X)` with cone `i(p1(X))`. Elements keep
/// the order of the carrier, zero first.
pub fn from_model(m: &SigmaAlgebra) -> Result<FiniteRpoGroup> {
    require_axioms(m)?;
    let x0 = m.x0();
    let mut pos = vec![usize::MAX; m.n];
    for (i, &x) in x0.iter().enumerate() {
        pos[x] = i;
    }
    let group = FiniteGroup::from_fn(x0.len(), |a, b| pos[m.plus(x0[a], x0[b])])
        .with_labels(x0.iter().map(|&x| m.label(x)).collect());
    let cone = Cone::from_indices(x0.len(), m.x1().iter().map(|&y| pos[m.inj(y)]));
    Ok(FiniteRpoGroup::from_parts("G(X)", group, cone))
}

/// The element `y ∈ p1(X)` with `i(y) = v`, if any. Unique under (Inj).
fn inj_preimage(m: &SigmaAlgebra, x1: &[usize], v: usize) -> Option<usize> {
    x1.iter().copied().find(|&y| m.inj(y) == v)
}

/// Checks that `h` is a bijective Σ-homomorphism `a -> b`.
pub fn is_sigma_iso(a: &SigmaAlgebra, b: &SigmaAlgebra, h: &[usize]) -> Verdict {
    if h.len() != a.n || a.n != b.n {
        return Verdict::fail(Witness::new("carrier size"));
    }
    let mut seen = vec![false; b.n];
    if let Some(x) = (0..a.n).find(|&x| std::mem::replace(&mut seen[h[x]], true)) {
        return Verdict::fail(Witness::new("bijective").bind("a", a.label(x)));
    }
    if h[a.zero] != b.zero {
        return Verdict::fail(Witness::new("preserves 0"));
    }
    type Unary = fn(&SigmaAlgebra, usize) -> usize;
    let unary: [(&str, Unary); 4] = [
        ("-", SigmaAlgebra::neg),
        ("p0", SigmaAlgebra::p0),
        ("p1", SigmaAlgebra::p1),
        ("i", SigmaAlgebra::inj),
    ];
    for (name, f) in unary {
        if let Some(x) = (0..a.n).find(|&x| h[f(a, x)] != f(b, h[x])) {
            return Verdict::fail(Witness::new(format!("preserves {name}")).bind("a", a.label(x)));
        }
    }
    if let (Some(ta), Some(tb)) = (a.tri(), b.tri()) {
        if let Some(x) = (0..a.n).find(|&x| h[ta[x]] != tb[h[x]]) {
            return Verdict::fail(Witness::new("preserves ▷").bind("a", a.label(x)));
        }
    }
    first_binary(a, "preserves +", |x, y| h[a.plus(x, y)] == b.plus(h[x], h[y]))
}

/// The map `+ : F(G(X)) -> X`, `(u, y) ↦ u + y`, where the cone element of
/// `F(G(X))` at position `j` is matched with the `y ∈ p1(X)` having that
/// `i`-image. Returns `(F(G(X)), map)`.
pub fn plus_map(m: &SigmaAlgebra) -> Result<(SigmaAlgebra, Vec<usize>)> {
    let g = from_model(m)?;
    let fg = to_model(&g);
    let x0 = m.x0();
    let x1 = m.x1();
    let cone: Vec<usize> = g.cone().iter().collect();
    let k = cone.len();
    let map = (0..fg.n)
        .map(|a| {
            let (u, j) = (x0[a / k], cone[a % k]);
            let y = inj_preimage(m, &x1, x0[j]).expect("cone comes from i(p1(X))");
            m.plus(u, y)
        })
        .collect();
    Ok((fg, map))
}

/// Verifies that `+ : F(G(X)) -> X` is an isomorphism of Σ-algebras.
pub fn check_plus_iso(m: &SigmaAlgebra) -> Result<Verdict> {
    let (fg, map) = plus_map(m)?;
    Ok(is_sigma_iso(&fg, m, &map))
}

/// Searches for a Σ-isomorphism `a -> b`. Both must satisfy the axioms.
/// Candidates are group isomorphisms `p0(a) -> p0(b)` carrying cone onto
/// cone; the rest of the map is forced by `f(x) = f(x0) + f(x1)`.
pub fn find_sigma_iso(a: &SigmaAlgebra, b: &SigmaAlgebra) -> Result<Option<Vec<usize>>> {
    if a.n != b.n || a.tri.is_some() != b.tri.is_some() {
        return Ok(None);
    }
    let (ga, gb) = (from_model(a)?, from_model(b)?);
    let (a0, a1, b0, b1) = (a.x0(), a.x1(), b.x0(), b.x1());
    let found = for_each_hom(ga.group(), gb.group(), true, |f0| {
        if !ga.cone().iter().all(|p| gb.is_positive(f0[p])) {
            return ControlFlow::Continue(());
        }
        let mut h = vec![usize::MAX; a.n];
        for (i, &x) in a0.iter().enumerate() {
            h[x] = b0[f0[i]];
        }
        for &y in &a1 {
            let v = h[a.inj(y)];
            match inj_preimage(b, &b1, v) {
                Some(w) => h[y] = w,
                None => return ControlFlow::Continue(()),
            }
        }
        for x in 0..a.n {
            h[x] = b.plus(h[a.p0(x)], h[a.p1(x)]);
        }
        if is_sigma_iso(a, b, &h).holds {
            ControlFlow::Break(h)
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}

#[derive(Clone, Debug)]
pub enum Extension {
    Extended(SigmaAlgebra),
    Refused(Verdict),
}

impl Extension {
    pub fn is_extended(&self) -> bool {
        matches!(self, Extension::Extended(_))
    }
}

/// Adds `▷`, defined by `i(▷(a)) = a0 + i(a1) - a0` with `▷(a) ∈ p1(X)`.
/// Refuses when some conjugate of a positive element is not positive.
pub fn extend_to_pog(m: &SigmaAlgebra) -> Result<Extension> {
    require_axioms(m)?;
    let x1 = m.x1();
    let mut tri = Vec::with_capacity(m.n);
    for a in 0..m.n {
        let a0 = m.p0(a);
        let target = m.minus(m.plus(a0, m.inj(m.p1(a))), a0);
        match inj_preimage(m, &x1, target) {
            Some(y) => tri.push(y),
            None => {
                return Ok(Extension::Refused(Verdict::fail(
                    Witness::new("conjugation-closure")
                        .bind("a", m.label(a))
                        .bind("a0", m.label(a0))
                        .bind("a1", m.label(m.p1(a)))
                        .with_expr(format!(
                            "{a0}+i({a1})-{a0}={t} is not in i(p1(X))",
                            a0 = m.label(a0),
                            a1 = m.label(m.p1(a)),
                            t = m.label(target)
                        )),
                )))
            }
        }
    }
    let ext = SigmaAlgebra {
        tri: Some(tri),
        ..m.clone()
    };
    let report = check_axioms(&ext);
    debug_assert!(report.all_hold(), "{report}");
    Ok(Extension::Extended(ext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog::{self, cyclic};
    use crate::finite::enumerate::find_isomorphism;

    fn one_point() -> SigmaAlgebra {
        let ops = SigmaOps {
            zero: 0,
            plus: vec![vec![0]],
            neg: vec![0],
            proj0: vec![0],
            proj1: vec![0],
            inj: vec![0],
            tri: None,
        };
        SigmaAlgebra::new(1, ops).unwrap()
    }

    #[test]
    fn one_point_model_is_the_zero_object() {
        let m = one_point();
        assert!(check_axioms(&m).all_hold());
        let g = from_model(&m).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g, FiniteRpoGroup::zero());
    }

    #[test]
    fn c2_discrete_model() {
        let g = FiniteRpoGroup::discrete("C2", cyclic(2));
        let m = to_model(&g);
        assert_eq!(m.carrier(), 2);
        assert!(m.proj1.iter().all(|&v| v == 0));
        assert!(check_axioms(&m).all_hold());
    }

    #[test]
    fn constant_inj_breaks_only_inj() {
        let g = FiniteRpoGroup::indiscrete("C2", cyclic(2));
        let m = to_model(&g).with_inj(vec![0; 4]).unwrap();
        let r = check_axioms(&m);
        let failing: Vec<&str> = r.entries().iter().filter(|(_, v)| !v.holds).map(|(n, _)| *n).collect();
        assert_eq!(failing, vec!["Inj"]);
        let w = r.inj.witness.unwrap();
        let mut pair = [w.get("a").unwrap().to_string(), w.get("b").unwrap().to_string()];
        pair.sort();
        assert_eq!(pair, ["(0,0)".to_string(), "(0,1)".to_string()]);
        // Independent evaluation of the implication.
        assert_eq!(m.inj(0), m.inj(1));
        assert_ne!(m.p1(0), m.p1(1));
        assert!(matches!(from_model(&m), Err(Error::Precondition { .. })));
    }

    #[test]
    fn structural_errors() {
        let ops = SigmaOps { plus: vec![vec![0, 1]], ..one_point().ops() };
        assert!(matches!(SigmaAlgebra::new(1, ops), Err(Error::Structural(_))));
        let ops = SigmaOps { neg: vec![3], ..one_point().ops() };
        assert!(matches!(SigmaAlgebra::new(1, ops), Err(Error::Structural(_))));
    }

    #[test]
    fn round_trips_on_small_groups() {
        for e in catalog::groups_up_to(6) {
            for cone in crate::finite::enumerate_cones(&e.group) {
                let g = FiniteRpoGroup::from_parts(e.name, e.group.clone(), cone);
                let m = to_model(&g);
                assert!(check_axioms(&m).all_hold(), "{}", e.name);
                let back = from_model(&m).unwrap();
                assert!(find_isomorphism(&back, &g).is_some());
                assert!(check_plus_iso(&m).unwrap().holds);
                let iso = find_sigma_iso(&m, &to_model(&back)).unwrap();
                assert!(iso.is_some());
            }
        }
    }

    #[test]
    fn extension_tracks_conjugation_closure() {
        let s3 = catalog::symmetric(3);
        for cone in crate::finite::enumerate_cones(&s3) {
            let g = FiniteRpoGroup::from_parts("S3", s3.clone(), cone);
            let ext = extend_to_pog(&to_model(&g)).unwrap();
            assert_eq!(ext.is_extended(), g.is_preordered().holds);
            if let Extension::Extended(x) = ext {
                assert!(check_axioms(&x).all_hold());
            }
        }
    }
}

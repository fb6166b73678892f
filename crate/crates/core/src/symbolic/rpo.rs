use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symbolic::element::SymbolicElement as E;
use crate::symbolic::group::SymbolicGroup;
use crate::verdict::{Verdict, Witness};

pub type Predicate = Arc<dyn Fn(&E) -> bool + Send + Sync>;
pub type ElementMap = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A positive cone given by a membership predicate.
#[derive(Clone)]
pub struct SymbolicCone {
    pub name: String,
    pred: Predicate,
}

impl SymbolicCone {
    pub fn new(name: impl Into<String>, pred: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self {
        SymbolicCone {
            name: name.into(),
            pred: Arc::new(pred),
        }
    }

    #[inline]
    pub fn contains(&self, e: &E) -> bool {
        (self.pred)(e)
    }
}

impl fmt::Debug for SymbolicCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicCone({})", self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    /// Bound on numerators and denominators of drawn rationals.
    pub height: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            samples: 1000,
            height: 10,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig { seed, ..Self::default() }
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// A right-preordered group on a symbolic carrier.
#[derive(Clone, Debug)]
pub struct SymbolicRpoGroup {
    pub name: String,
    pub group: SymbolicGroup,
    pub cone: SymbolicCone,
    /// Elements that every sample stream visits first, after the identity.
    pub designated: Vec<E>,
}

impl SymbolicRpoGroup {
    pub fn new(name: impl Into<String>, group: SymbolicGroup, cone: SymbolicCone) -> Self {
        SymbolicRpoGroup {
            name: name.into(),
            group,
            cone,
            designated: Vec::new(),
        }
    }

    pub fn with_designated(mut self, elems: Vec<E>) -> Self {
        self.designated = elems;
        self
    }

    pub fn is_positive(&self, e: &E) -> bool {
        self.cone.contains(e)
    }

    /// Deterministic sample stream: identity, designated elements, boundary
    /// points, then `cfg.samples` random draws.
    pub fn samples(&self, cfg: &SampleConfig) -> Result<Vec<E>> {
        if let Some(bad) = self.designated.iter().find(|e| !self.group.contains(e)) {
            return Err(Error::Domain(format!("designated element {bad} is not in {}", self.group)));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let fixed = std::iter::once(self.group.identity())
            .chain(self.designated.iter().cloned())
            .chain(self.group.boundary());
        for e in fixed {
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        let mut rng = cfg.rng(1);
        out.extend((0..cfg.samples).map(|_| self.group.sample(&mut rng, cfg.height)));
        Ok(out)
    }

    /// Positive elements of the sample stream, in stream order.
    pub fn positive_samples(&self, cfg: &SampleConfig) -> Result<Vec<E>> {
        Ok(self.samples(cfg)?.into_iter().filter(|e| self.is_positive(e)).collect())
    }
}

/// Index pairs to test: all pairs among the first `dense` items, then
/// `extra` random pairs.
pub(crate) fn sample_pairs(len: usize, dense: usize, extra: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let d = dense.min(len);
    let mut out: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    if len > 0 {
        out.extend((0..extra).map(|_| (rng.random_range(0..len), rng.random_range(0..len))));
    }
    out
}

/// Group laws and cone-submonoid laws on sampled elements. A failure is a
/// genuine counterexample; a pass is labelled sampled.
pub fn sampled_validate(g: &SymbolicRpoGroup, cfg: &SampleConfig) -> Result<Verdict> {
    if cfg.samples == 0 {
        return Err(Error::precondition("at least one sample", "sample count is 0"));
    }
    let grp = &g.group;
    let xs = g.samples(cfg)?;
    if let Some(bad) = xs.iter().find(|e| !grp.contains(e)) {
        return Err(Error::Domain(format!("sampler produced {bad} outside {grp}")));
    }
    let zero = grp.identity();
    for a in &xs {
        if grp.op(&zero, a) != *a || grp.op(a, &zero) != *a {
            return Ok(Verdict::fail(Witness::new("identity").bind("a", a)).sampled());
        }
        if grp.op(a, &grp.neg(a)) != zero || grp.op(&grp.neg(a), a) != zero {
            return Ok(Verdict::fail(Witness::new("inverse").bind("a", a)).sampled());
        }
    }
    let mut rng = cfg.rng(2);
    for (i, j) in sample_pairs(xs.len(), 12, cfg.samples, &mut rng) {
        let c = &xs[rng.random_range(0..xs.len())];
        let (a, b) = (&xs[i], &xs[j]);
        if grp.op(&grp.op(a, b), c) != grp.op(a, &grp.op(b, c)) {
            return Ok(Verdict::fail(
                Witness::new("associativity").bind("a", a).bind("b", b).bind("c", c),
            )
            .sampled());
        }
    }
    if !g.is_positive(&zero) {
        return Ok(Verdict::fail(Witness::new("cone-identity").bind("e", &zero)).sampled());
    }
    let pos: Vec<&E> = xs.iter().filter(|e| g.is_positive(e)).collect();
    for (i, j) in sample_pairs(pos.len(), 64, cfg.samples, &mut rng) {
        let (p, q) = (pos[i], pos[j]);
        let s = grp.op(p, q);
        if !g.is_positive(&s) {
            return Ok(Verdict::fail(
                Witness::new("cone-closure")
                    .bind("p", p)
                    .bind("q", q)
                    .with_expr(format!("{p}+{q}={s} is not positive")),
            )
            .sampled());
        }
    }
    Ok(Verdict::pass().sampled())
}

/// Witness expressions: `["elem", v]`, `["add", e1, e2, ...]`, `["neg", e]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Elem(serde_json::Value),
    Add(Vec<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn from_json(v: &serde_json::Value) -> Result<Expr> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expression must be an array: {v}")))?;
        let head = arr.first().and_then(|h| h.as_str()).unwrap_or("");
        let args = &arr[1.min(arr.len())..];
        match (head, args.len()) {
            ("elem", 1) => Ok(Expr::Elem(args[0].clone())),
            ("neg", 1) => Ok(Expr::Neg(Box::new(Expr::from_json(&args[0])?))),
            ("add", n) if n >= 1 => args.iter().map(Expr::from_json).collect::<Result<_>>().map(Expr::Add),
            _ => Err(Error::Parse(format!("malformed expression: {v}"))),
        }
    }

    pub fn eval(&self, g: &SymbolicGroup) -> Result<E> {
        match self {
            Expr::Elem(v) => g.element_from_json(v),
            Expr::Neg(e) => Ok(g.neg(&e.eval(g)?)),
            Expr::Add(items) => {
                let mut acc = items[0].eval(g)?;
                for e in &items[1..] {
                    acc = g.op(&acc, &e.eval(g)?);
                }
                Ok(acc)
            }
        }
    }

    fn render(&self, g: &SymbolicGroup) -> String {
        match self {
            Expr::Elem(v) => g.element_from_json(v).map(|e| e.to_string()).unwrap_or_else(|_| v.to_string()),
            Expr::Neg(e) => format!("-{}", e.render(g)),
            Expr::Add(items) => items.iter().enumerate().fold(String::new(), |mut s, (i, e)| {
                match e {
                    Expr::Neg(_) => {}
                    _ if i > 0 => s.push('+'),
                    _ => {}
                }
                s.push_str(&e.render(g));
                s
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessValue {
    pub expr: String,
    pub value: E,
    pub positive: bool,
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.positive { "∈" } else { "∉" };
        write!(f, "{}={} {m} P", self.expr, self.value)
    }
}

/// Evaluates a witness expression exactly and reports cone membership.
pub fn eval_witness(expr: &Expr, g: &SymbolicRpoGroup) -> Result<WitnessValue> {
    let value = expr.eval(&g.group)?;
    Ok(WitnessValue {
        expr: expr.render(&g.group),
        positive: g.is_positive(&value),
        value,
    })
}

/// A map between symbolic rpo groups.
#[derive(Clone)]
pub struct SymbolicMorphism {
    pub name: String,
    pub dom: Arc<SymbolicRpoGroup>,
    pub cod: Arc<SymbolicRpoGroup>,
    f: ElementMap,
}

impl fmt::Debug for SymbolicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicMorphism({}: {} -> {})", self.name, self.dom.name, self.cod.name)
    }
}

impl SymbolicMorphism {
    pub fn new(
        name: impl Into<String>,
        dom: Arc<SymbolicRpoGroup>,
        cod: Arc<SymbolicRpoGroup>,
        f: impl Fn(&E) -> E + Send + Sync + 'static,
    ) -> Self {
        SymbolicMorphism {
            name: name.into(),
            dom,
            cod,
            f: Arc::new(f),
        }
    }

    pub fn apply(&self, a: &E) -> E {
        (self.f)(a)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SymbolicMorphism) -> SymbolicMorphism {
        let (f, g) = (first.f.clone(), self.f.clone());
        SymbolicMorphism {
            name: format!("{}∘{}", self.name, first.name),
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            f: Arc::new(move |a| g(&f(a))),
        }
    }

    /// Homomorphism on sampled pairs and monotonicity on sampled positives.
    pub fn check_sampled(&self, cfg: &SampleConfig) -> Result<Verdict> {
        let (dg, cg) = (&self.dom.group, &self.cod.group);
        let xs = self.dom.samples(cfg)?;
        let mut rng = cfg.rng(3);
        for (i, j) in sample_pairs(xs.len(), 12, cfg.samples, &mut rng) {
            let (a, b) = (&xs[i], &xs[j]);
            if self.apply(&dg.op(a, b)) != cg.op(&self.apply(a), &self.apply(b)) {
                return Ok(Verdict::fail(Witness::new("homomorphism").bind("a", a).bind("b", b)).sampled());
            }
        }
        for p in xs.iter().filter(|p| self.dom.is_positive(p)) {
            let fp = self.apply(p);
            if !self.cod.is_positive(&fp) {
                return Ok(Verdict::fail(Witness::new("monotonicity").bind("p", p).bind("f(p)", fp)).sampled());
            }
        }
        Ok(Verdict::pass().sampled())
    }

    /// Sampled version of the finite normal-mono check: the image must be
    /// normal (automatic for abelian codomains) and `f` must reflect
    /// positivity. Injectivity is checked on the samples.
    pub fn is_normal_mono_sampled(&self, cfg: &SampleConfig) -> Result<Verdict> {
        let xs = self.dom.samples(cfg)?;
        let mut images = std::collections::HashMap::new();
        for a in &xs {
            if let Some(prev) = images.insert(self.apply(a), a.clone()) {
                if prev != *a {
                    return Err(Error::precondition(
                        "injective morphism",
                        format!("{} and {a} have the same image", prev),
                    ));
                }
            }
        }
        if !self.cod.group.is_abelian() {
            return Err(Error::precondition(
                "abelian codomain",
                "image normality is only decidable here for abelian codomains",
            ));
        }
        for a in &xs {
            let fa = self.apply(a);
            if self.cod.is_positive(&fa) && !self.dom.is_positive(a) {
                return Ok(Verdict::fail(
                    Witness::new("cone-equality")
                        .bind("a", a)
                        .bind("f(a)", &fa)
                        .with_expr(format!(
                            "f({a})={fa} lies in im f ∩ {} but {a} is not in {}",
                            self.cod.cone.name, self.dom.cone.name
                        )),
                )
                .sampled());
            }
        }
        Ok(Verdict::pass().sampled())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn z_n() -> SymbolicRpoGroup {
        SymbolicRpoGroup::new(
            "Z_N",
            SymbolicGroup::Integers,
            SymbolicCone::new("ℕ", |e| !e.as_int().unwrap().is_negative()),
        )
    }

    #[test]
    fn sample_stream_is_deterministic() {
        let g = z_n();
        let cfg = SampleConfig::with_seed(7);
        assert_eq!(g.samples(&cfg).unwrap(), g.samples(&cfg).unwrap());
        assert_ne!(g.samples(&cfg).unwrap(), g.samples(&SampleConfig::with_seed(8)).unwrap());
        assert_eq!(g.samples(&cfg).unwrap()[0], E::int(0));
    }

    #[test]
    fn naturals_pass() {
        for seed in 0..5 {
            assert!(sampled_validate(&z_n(), &SampleConfig::with_seed(seed)).unwrap().holds);
        }
    }

    #[test]
    fn zero_samples_is_a_precondition_error() {
        let cfg = SampleConfig { samples: 0, ..SampleConfig::default() };
        assert!(matches!(sampled_validate(&z_n(), &cfg), Err(Error::Precondition { .. })));
    }

    #[test]
    fn designated_outside_domain_is_reported() {
        let g = z_n().with_designated(vec![E::rat(1, 2)]);
        assert!(matches!(sampled_validate(&g, &SampleConfig::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn non_closed_cone_is_caught() {
        let g = SymbolicRpoGroup::new(
            "odd",
            SymbolicGroup::Integers,
            SymbolicCone::new("{0,1}", |e| *e == E::int(0) || *e == E::int(1)),
        );
        let v = sampled_validate(&g, &SampleConfig::default()).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.law, "cone-closure");
        assert_eq!((w.get("p"), w.get("q")), (Some("1"), Some("1")));
    }

    #[test]
    fn expressions_parse_and_render() {
        let g = z_n();
        let e = Expr::from_json(&serde_json::json!(["add", ["elem", 0], ["neg", ["elem", 0]]])).unwrap();
        let w = eval_witness(&e, &g).unwrap();
        assert_eq!(w.value, E::int(0));
        assert!(w.positive);
        assert_eq!(w.to_string(), "0-0=0 ∈ P");
        assert!(Expr::from_json(&serde_json::json!(["mul", 1])).is_err());
        assert!(Expr::from_json(&serde_json::json!(["add"])).is_err());
    }
}

//! The built-in symbolic examples.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::symbolic::element::SymbolicElement as E;
use crate::symbolic::graph::SymbolicGraph;
use crate::symbolic::group::SymbolicGroup;
use crate::symbolic::rpo::{SymbolicCone, SymbolicMorphism, SymbolicRpoGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleId {
    /// (ℤ, ℕ)
    ZN,
    /// (ℤ, 0)
    ZTriv,
    /// (ℤ×ℤ, Δ(ℕ))
    ZxZDiagN,
    Ex1,
    Ex2,
    Ex3,
    Ex4,
}

impl ExampleId {
    pub const ALL: [ExampleId; 7] = [
        ExampleId::ZN,
        ExampleId::ZTriv,
        ExampleId::ZxZDiagN,
        ExampleId::Ex1,
        ExampleId::Ex2,
        ExampleId::Ex3,
        ExampleId::Ex4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExampleId::ZN => "Z_N",
            ExampleId::ZTriv => "Z_triv",
            ExampleId::ZxZDiagN => "ZxZ_diagN",
            ExampleId::Ex1 => "Ex1",
            ExampleId::Ex2 => "Ex2",
            ExampleId::Ex3 => "Ex3",
            ExampleId::Ex4 => "Ex4",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub enum SymbolicObject {
    Rpo(Arc<SymbolicRpoGroup>),
    Graph(Arc<SymbolicGraph>),
}

fn rational(e: &E) -> BigRational {
    e.as_rational().expect("scalar element")
}

fn is_natural(q: &BigRational) -> bool {
    q.is_integer() && !q.is_negative()
}

fn is_sign(q: &BigRational) -> bool {
    q.abs().is_one()
}

pub fn z_n() -> SymbolicRpoGroup {
    SymbolicRpoGroup::new(
        "(ℤ,ℕ)",
        SymbolicGroup::Integers,
        SymbolicCone::new("ℕ", |e| !e.as_int().expect("integer").is_negative()),
    )
}

pub fn z_triv() -> SymbolicRpoGroup {
    SymbolicRpoGroup::new(
        "(ℤ,0)",
        SymbolicGroup::Integers,
        SymbolicCone::new("0", |e| e.as_int().expect("integer").is_zero()),
    )
}

pub fn zxz_diag_n() -> SymbolicRpoGroup {
    SymbolicRpoGroup::new(
        "(ℤ×ℤ,Δ(ℕ))",
        SymbolicGroup::pair(SymbolicGroup::Integers, SymbolicGroup::Integers),
        SymbolicCone::new("Δ(ℕ)", |e| e.at(0) == e.at(1) && !e.at(0).as_int().expect("integer").is_negative()),
    )
}

/// `(2ℕ⋊ℕ*) ∪ ((2ℕ+1)⋊2ℕ*)` inside ℚ⋊ℚ*.
pub fn ex1_cone(a: &E) -> bool {
    let (k, x) = (rational(a.at(0)), rational(a.at(1)));
    if !is_natural(&k) || !is_natural(&x) || x.is_zero() {
        return false;
    }
    let even = |q: &BigRational| (q.to_integer() % BigInt::from(2)).is_zero();
    even(&k) || even(&x)
}

/// `(2ℕ⋊ℕ*) ∪ ((2ℕ+1)×{2})`: the Ex1 cone with the odd part pinned to the
/// multiplier 2. Not closed: `(1,2)+(0,3) = (1,6)`.
pub fn ex1_variant_cone(a: &E) -> bool {
    let (k, x) = (rational(a.at(0)), rational(a.at(1)));
    if !is_natural(&k) || !is_natural(&x) || x.is_zero() {
        return false;
    }
    let even = |q: &BigRational| (q.to_integer() % BigInt::from(2)).is_zero();
    even(&k) || x == BigRational::from_integer(BigInt::from(2))
}

/// The apex of Ex1 with [`ex1_variant_cone`].
pub fn ex1_variant() -> SymbolicRpoGroup {
    SymbolicRpoGroup::new(
        "ℚ⋊ℚ*",
        SymbolicGroup::Affine,
        SymbolicCone::new("(2ℕ⋊ℕ*)∪((2ℕ+1)×{2})", ex1_variant_cone),
    )
    .with_designated(vec![E::pair(E::rat(1, 1), E::nzr(2, 1)), E::pair(E::rat(0, 1), E::nzr(3, 1))])
}

fn graph(
    name: &str,
    apex: SymbolicRpoGroup,
    base: SymbolicRpoGroup,
    d: impl Fn(&E) -> E + Send + Sync + 'static,
    c: impl Fn(&E) -> E + Send + Sync + 'static,
    e: impl Fn(&E) -> E + Send + Sync + 'static,
) -> SymbolicGraph {
    let (apex, base) = (Arc::new(apex), Arc::new(base));
    SymbolicGraph {
        name: name.to_string(),
        d: SymbolicMorphism::new("d", apex.clone(), base.clone(), d),
        c: SymbolicMorphism::new("c", apex.clone(), base.clone(), c),
        e: SymbolicMorphism::new("e", base.clone(), apex.clone(), e),
        apex,
        base,
    }
}

fn p1(a: &E) -> E {
    a.at(1).clone()
}

/// ℚ⋊ℚ* over (ℚ*, ℕ*), with `d = c = p₁` as drawn and `e(x) = (0,x)`.
pub fn ex1() -> SymbolicGraph {
    let apex = SymbolicRpoGroup::new("ℚ⋊ℚ*", SymbolicGroup::Affine, SymbolicCone::new("(2ℕ⋊ℕ*)∪((2ℕ+1)⋊2ℕ*)", ex1_cone))
        .with_designated(vec![E::pair(E::rat(3, 1), E::nzr(2, 1))]);
    let base = SymbolicRpoGroup::new(
        "ℚ*",
        SymbolicGroup::NonZeroRationals,
        SymbolicCone::new("ℕ*", |x| is_natural(&rational(x))),
    );
    graph("Ex1", apex, base, p1, p1, |x| E::pair(E::Rat(BigRational::zero()), x.clone()))
}

/// ℤ×ℤ with cone ℕ×ℤ over (ℤ, ℤ); `d = p₁`, `c = p₀+p₁`, `e(b) = (0,b)`.
pub fn ex2() -> SymbolicGraph {
    let zz = SymbolicGroup::pair(SymbolicGroup::Integers, SymbolicGroup::Integers);
    let apex = SymbolicRpoGroup::new(
        "ℤ×ℤ",
        zz,
        SymbolicCone::new("ℕ×ℤ", |a| !a.at(0).as_int().expect("integer").is_negative()),
    )
    .with_designated(vec![E::pair(E::int(1), E::int(0))]);
    let base = SymbolicRpoGroup::new("ℤ", SymbolicGroup::Integers, SymbolicCone::new("ℤ", |_| true));
    graph(
        "Ex2",
        apex,
        base,
        p1,
        |a| E::Int(a.at(0).as_int().expect("integer") + a.at(1).as_int().expect("integer")),
        |b| E::pair(E::int(0), b.clone()),
    )
}

fn qstar_pair() -> SymbolicGroup {
    SymbolicGroup::pair(SymbolicGroup::NonZeroRationals, SymbolicGroup::NonZeroRationals)
}

fn unit_ball_base() -> SymbolicRpoGroup {
    SymbolicRpoGroup::new(
        "ℚ*",
        SymbolicGroup::NonZeroRationals,
        SymbolicCone::new("ℚ*∩[-1,1]", |b| rational(b).abs() <= BigRational::one()),
    )
}

fn ex34(name: &str, cone: SymbolicCone, designated: E) -> SymbolicGraph {
    let apex = SymbolicRpoGroup::new("ℚ*×ℚ*", qstar_pair(), cone).with_designated(vec![designated]);
    graph(name, apex, unit_ball_base(), p1, p1, |b| E::pair(E::nzr(1, 1), b.clone()))
}

/// `(C²×ℚ*_{≤1}) ∪ ((ℚ*∖C²)×ℚ*_{<1})`, with ℚ* standing in for ℝ*.
pub fn ex3() -> SymbolicGraph {
    let cone = SymbolicCone::new("(C²×ℚ*≤1)∪((ℚ*∖C²)×ℚ*<1)", |p| {
        let (a, b) = (rational(p.at(0)), rational(p.at(1)).abs());
        if is_sign(&a) {
            b <= BigRational::one()
        } else {
            b < BigRational::one()
        }
    });
    ex34("Ex3", cone, E::pair(E::nzr(5, 1), E::nzr(1, 2)))
}

/// `(C²×ℚ*_{≤1}) ∪ (ℚ*_{<1}×ℚ*_{<1})`.
pub fn ex4() -> SymbolicGraph {
    let cone = SymbolicCone::new("(C²×ℚ*≤1)∪(ℚ*<1×ℚ*<1)", |p| {
        let (a, b) = (rational(p.at(0)).abs(), rational(p.at(1)).abs());
        let one = BigRational::one();
        (a == one && b <= one) || (a < one && b < one)
    });
    ex34("Ex4", cone, E::pair(E::nzr(1, 2), E::nzr(1, 2)))
}

pub fn build_example(id: ExampleId) -> SymbolicObject {
    match id {
        ExampleId::ZN => SymbolicObject::Rpo(Arc::new(z_n())),
        ExampleId::ZTriv => SymbolicObject::Rpo(Arc::new(z_triv())),
        ExampleId::ZxZDiagN => SymbolicObject::Rpo(Arc::new(zxz_diag_n())),
        ExampleId::Ex1 => SymbolicObject::Graph(Arc::new(ex1())),
        ExampleId::Ex2 => SymbolicObject::Graph(Arc::new(ex2())),
        ExampleId::Ex3 => SymbolicObject::Graph(Arc::new(ex3())),
        ExampleId::Ex4 => SymbolicObject::Graph(Arc::new(ex4())),
    }
}

/// The square `(ℤ,0) = (ℤ,0)` over `p₁: (ℤ×ℤ,Δ(ℕ)) -> (ℤ,ℕ)`: returns
/// `(w, p₁, v)` where `w = ker p₀` is `a ↦ (0,a)` and `v = p₁∘w` is the
/// identity of ℤ viewed as `(ℤ,0) -> (ℤ,ℕ)`.
pub fn ideal_determined_square() -> (SymbolicMorphism, SymbolicMorphism, SymbolicMorphism) {
    let (triv, diag, zn) = (Arc::new(z_triv()), Arc::new(zxz_diag_n()), Arc::new(z_n()));
    let w = SymbolicMorphism::new("ker p₀", triv, diag.clone(), |a| E::pair(E::int(0), a.clone()));
    let p = SymbolicMorphism::new("p₁", diag, zn, p1);
    let v = p.after(&w);
    (w, p, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in ExampleId::ALL {
            assert_eq!(id.name().parse::<ExampleId>().unwrap(), id);
        }
        assert!("Ex5".parse::<ExampleId>().is_err());
    }

    #[test]
    fn diagonal_membership() {
        let g = zxz_diag_n();
        let e = |a, b| E::pair(E::int(a), E::int(b));
        assert!(g.is_positive(&e(2, 2)));
        assert!(!g.is_positive(&e(2, 3)));
        assert!(!g.is_positive(&e(-1, -1)));
    }

    #[test]
    fn ex1_variant_is_not_closed() {
        let g = ex1_variant();
        let v = crate::symbolic::sampled_validate(&g, &crate::symbolic::SampleConfig::default()).unwrap();
        assert_eq!(v.witness_law(), Some("cone-closure"));
        let sum = g.group.op(&E::pair(E::rat(1, 1), E::nzr(2, 1)), &E::pair(E::rat(0, 1), E::nzr(3, 1)));
        assert_eq!(sum, E::pair(E::rat(1, 1), E::nzr(6, 1)));
        assert!(!g.is_positive(&sum));
        // The cone as drawn is closed.
        let apex = ex1().apex;
        assert!(crate::symbolic::sampled_validate(&apex, &crate::symbolic::SampleConfig::default()).unwrap().holds);
    }

    #[test]
    fn ex1_cone_cases() {
        let e = |a, x| E::pair(E::rat(a, 1), E::nzr(x, 1));
        assert!(ex1_cone(&e(0, 1)));
        assert!(ex1_cone(&e(4, 3)));
        assert!(ex1_cone(&e(3, 2)));
        assert!(!ex1_cone(&e(3, 1)));
        assert!(!ex1_cone(&e(-2, 1)));
        assert!(!ex1_cone(&E::pair(E::rat(1, 2), E::nzr(2, 1))));
        assert!(!ex1_cone(&E::pair(E::rat(2, 1), E::nzr(1, 2))));
    }

    #[test]
    fn graphs_are_reflexive_on_samples() {
        let cfg = crate::symbolic::SampleConfig::default();
        for g in [ex1(), ex2(), ex3(), ex4()] {
            for x in g.base.samples(&cfg).unwrap() {
                let ex = g.e.apply(&x);
                assert_eq!(g.d.apply(&ex), x, "{}", g.name);
                assert_eq!(g.c.apply(&ex), x, "{}", g.name);
            }
        }
    }
}

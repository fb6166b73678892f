use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finite::group::FiniteGroup;
use crate::verdict::{Verdict, Witness};

/// Positive cone: a set of group elements (a submonoid on valid objects).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cone(BitSet);

impl Cone {
    pub fn new(members: BitSet) -> Self {
        Cone(members)
    }

    pub fn from_indices(order: usize, items: impl IntoIterator<Item = usize>) -> Self {
        Cone(BitSet::from_indices(order, items))
    }

    /// The trivial cone `{0}` (discrete preorder).
    pub fn trivial(order: usize) -> Self {
        Cone::from_indices(order, [0])
    }

    /// The whole group (indiscrete preorder).
    pub fn full(order: usize) -> Self {
        Cone(BitSet::full(order))
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(a)
    }

    pub fn members(&self) -> &BitSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
}

/// A finite right-preordered group `(G, P)`.
#[derive(Clone, Debug)]
pub struct FiniteRpoGroup {
    name: String,
    group: FiniteGroup,
    cone: Cone,
}

impl PartialEq for FiniteRpoGroup {
    /// Equality of the underlying data; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.cone == other.cone
    }
}

impl FiniteRpoGroup {
    /// Pairs a group with a cone given by element indices. Only index ranges
    /// are checked here; see [`FiniteRpoGroup::validate`].
    pub fn new(name: impl Into<String>, group: FiniteGroup, cone: &[usize]) -> Result<Self> {
        let n = group.order();
        if let Some(&bad) = cone.iter().find(|&&c| c >= n) {
            return Err(Error::structural(format!(
                "cone element {bad} is out of range 0..{n}"
            )));
        }
        Ok(FiniteRpoGroup {
            name: name.into(),
            group,
            cone: Cone::from_indices(n, cone.iter().copied()),
        })
    }

    pub fn from_parts(name: impl Into<String>, group: FiniteGroup, cone: Cone) -> Self {
        assert_eq!(cone.members().capacity(), group.order());
        FiniteRpoGroup {
            name: name.into(),
            group,
            cone,
        }
    }

    /// `(G, {0})`.
    pub fn discrete(name: impl Into<String>, group: FiniteGroup) -> Self {
        let n = group.order();
        Self::from_parts(name, group, Cone::trivial(n))
    }

    /// `(G, G)`.
    pub fn indiscrete(name: impl Into<String>, group: FiniteGroup) -> Self {
        let n = group.order();
        Self::from_parts(name, group, Cone::full(n))
    }

    /// The zero object: trivial group with trivial preorder.
    pub fn zero() -> Self {
        Self::discrete("0", FiniteGroup::from_fn(1, |_, _| 0))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn with_cone(&self, cone: Cone) -> Self {
        Self::from_parts(self.name.clone(), self.group.clone(), cone)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn is_positive(&self, a: usize) -> bool {
        self.cone.contains(a)
    }

    pub fn label(&self, a: usize) -> String {
        self.group.label(a)
    }

    /// Group axioms, then cone-submonoid axioms. The witness names the first
    /// violated law in lexicographic element order.
    pub fn validate(&self) -> Verdict {
        if let Some(w) = self.group.law_violation() {
            return Verdict::fail(w);
        }
        if !self.cone.contains(0) {
            return Verdict::fail(Witness::new("cone-identity").bind("e", self.label(0)));
        }
        for p in self.cone.iter() {
            for q in self.cone.iter() {
                let s = self.group.op(p, q);
                if !self.cone.contains(s) {
                    return Verdict::fail(
                        Witness::new("cone-closure")
                            .bind("p", self.label(p))
                            .bind("q", self.label(q))
                            .with_expr(format!(
                                "{}+{}={} is not positive",
                                self.label(p),
                                self.label(q),
                                self.label(s)
                            )),
                    );
                }
            }
        }
        Verdict::pass()
    }

    /// Two-sided invariance: `x + p - x ∈ P` for all `x ∈ G`, `p ∈ P`.
    pub fn is_preordered(&self) -> Verdict {
        for x in self.group.elements() {
            for p in self.cone.iter() {
                let c = self.group.conj(x, p);
                if !self.cone.contains(c) {
                    return Verdict::fail(
                        Witness::new("conjugation-closure")
                            .bind("x", self.label(x))
                            .bind("p", self.label(p))
                            .bind("x+p-x", self.label(c))
                            .with_expr(format!(
                                "{x}+{p}-{x}={c} is not positive",
                                x = self.label(x),
                                p = self.label(p),
                                c = self.label(c)
                            )),
                    );
                }
            }
        }
        Verdict::pass()
    }

    /// Whether the cone is closed under inverses.
    pub fn cone_is_group(&self) -> Verdict {
        match self.cone.iter().find(|&p| !self.cone.contains(self.group.neg(p))) {
            None => Verdict::pass(),
            Some(p) => Verdict::fail(
                Witness::new("cone-inverse")
                    .bind("p", self.label(p))
                    .bind("-p", self.label(self.group.neg(p))),
            ),
        }
    }

    /// Direct product with componentwise cone.
    pub fn product(&self, other: &FiniteRpoGroup) -> FiniteRpoGroup {
        let g = self.group.product(&other.group);
        let m = other.order();
        let cone = Cone::from_indices(
            g.order(),
            self.cone
                .iter()
                .flat_map(|a| other.cone.iter().map(move |b| a * m + b)),
        );
        FiniteRpoGroup::from_parts(format!("{}x{}", self.name, other.name), g, cone)
    }

    /// The sub-object on a subgroup `elements` with cone `elements ∩ P`,
    /// together with its inclusion. Elements are re-indexed in ascending order.
    pub fn restrict(self: &Arc<Self>, elements: &BitSet, name: impl Into<String>) -> (Arc<Self>, RpoMorphism) {
        let list = elements.to_vec();
        let group = self.group.induced(&list);
        let cone = Cone::from_indices(
            list.len(),
            list.iter()
                .enumerate()
                .filter(|(_, &e)| self.cone.contains(e))
                .map(|(i, _)| i),
        );
        let sub = Arc::new(FiniteRpoGroup::from_parts(name, group, cone));
        let inc = RpoMorphism::new(sub.clone(), self.clone(), list).expect("inclusion is well-formed");
        (sub, inc)
    }

    /// Relabels elements (old index -> new index). `perm[0]` must be 0.
    pub fn permuted(&self, perm: &[usize]) -> FiniteRpoGroup {
        assert_eq!(perm[0], 0);
        let group = self.group.permuted(perm);
        let cone = Cone::from_indices(self.order(), self.cone.iter().map(|a| perm[a]));
        FiniteRpoGroup::from_parts(self.name.clone(), group, cone)
    }
}

/// A map of underlying sets between two rpo groups; [`RpoMorphism::check`]
/// decides whether it is a monotone group homomorphism.
#[derive(Clone, Debug)]
pub struct RpoMorphism {
    dom: Arc<FiniteRpoGroup>,
    cod: Arc<FiniteRpoGroup>,
    map: Vec<usize>,
}

impl RpoMorphism {
    pub fn new(dom: Arc<FiniteRpoGroup>, cod: Arc<FiniteRpoGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.order() {
            return Err(Error::structural(format!(
                "map has {} entries but the domain has {} elements",
                map.len(),
                dom.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.order()) {
            return Err(Error::structural(format!(
                "map value {bad} is out of range 0..{}",
                cod.order()
            )));
        }
        Ok(RpoMorphism { dom, cod, map })
    }

    pub fn identity(obj: Arc<FiniteRpoGroup>) -> Self {
        let map = (0..obj.order()).collect();
        RpoMorphism {
            dom: obj.clone(),
            cod: obj,
            map,
        }
    }

    pub fn zero(dom: Arc<FiniteRpoGroup>, cod: Arc<FiniteRpoGroup>) -> Self {
        let map = vec![0; dom.order()];
        RpoMorphism { dom, cod, map }
    }

    pub fn dom(&self) -> &Arc<FiniteRpoGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteRpoGroup> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RpoMorphism) -> Result<RpoMorphism> {
        if first.cod.order() != self.dom.order() {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.dom.name(),
                self.cod.name(),
                first.dom.name(),
                first.cod.name()
            )));
        }
        Ok(RpoMorphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&a| self.map[a]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BitSet::new(self.cod.order());
        self.map.iter().all(|&v| seen.insert(v))
    }

    pub fn is_surjective(&self) -> bool {
        BitSet::from_indices(self.cod.order(), self.map.iter().copied()).count() == self.cod.order()
    }

    pub fn image(&self) -> BitSet {
        BitSet::from_indices(self.cod.order(), self.map.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    pub fn homomorphism_violation(&self) -> Option<Witness> {
        let (g, h) = (self.dom.group(), self.cod.group());
        for a in g.elements() {
            for b in g.elements() {
                let lhs = self.map[g.op(a, b)];
                let rhs = h.op(self.map[a], self.map[b]);
                if lhs != rhs {
                    return Some(
                        Witness::new("homomorphism")
                            .bind("a", self.dom.label(a))
                            .bind("b", self.dom.label(b))
                            .with_expr(format!(
                                "f({a}+{b})={} but f({a})+f({b})={}",
                                self.cod.label(lhs),
                                self.cod.label(rhs),
                                a = self.dom.label(a),
                                b = self.dom.label(b)
                            )),
                    );
                }
            }
        }
        None
    }

    pub fn monotonicity_violation(&self) -> Option<Witness> {
        self.dom
            .cone()
            .iter()
            .find(|&p| !self.cod.is_positive(self.map[p]))
            .map(|p| {
                Witness::new("monotonicity")
                    .bind("p", self.dom.label(p))
                    .bind("f(p)", self.cod.label(self.map[p]))
                    .with_expr(format!(
                        "{} is positive but f({})={} is not",
                        self.dom.label(p),
                        self.dom.label(p),
                        self.cod.label(self.map[p])
                    ))
            })
    }

    /// Homomorphism and monotonicity, both checked exhaustively.
    pub fn check(&self) -> Verdict {
        Verdict::from(self.homomorphism_violation())
            .and_then(|| Verdict::from(self.monotonicity_violation()))
    }

    /// The kernel `(f⁻¹(0), f⁻¹(0) ∩ P)` and its inclusion.
    pub fn kernel(&self) -> (Arc<FiniteRpoGroup>, RpoMorphism) {
        let elems = BitSet::from_indices(
            self.dom.order(),
            self.dom.group().elements().filter(|&a| self.map[a] == 0),
        );
        self.dom.restrict(&elems, format!("ker({}->{})", self.dom.name(), self.cod.name()))
    }

    /// Whether an injective morphism is a kernel: its image is a normal
    /// subgroup and it reflects positivity, i.e. `f(P_dom) = im f ∩ P_cod`.
    pub fn is_normal_mono(&self) -> Result<Verdict> {
        if !self.is_injective() {
            return Err(Error::precondition(
                "injective morphism",
                format!("{} -> {} is not injective", self.dom.name(), self.cod.name()),
            ));
        }
        let image = self.image();
        if let Some((x, a)) = self.cod.group().normality_violation(&image) {
            let c = self.cod.group().conj(x, a);
            return Ok(Verdict::fail(
                Witness::new("normal-image")
                    .bind("x", self.cod.label(x))
                    .bind("k", self.cod.label(a))
                    .bind("x+k-x", self.cod.label(c))
                    .with_expr(format!(
                        "{x}+{k}-{x}={c} leaves the image",
                        x = self.cod.label(x),
                        k = self.cod.label(a),
                        c = self.cod.label(c)
                    )),
            ));
        }
        for a in self.dom.group().elements() {
            if self.cod.is_positive(self.map[a]) != self.dom.is_positive(a) {
                return Ok(Verdict::fail(
                    Witness::new("cone-equality")
                        .bind("a", self.dom.label(a))
                        .bind("f(a)", self.cod.label(self.map[a]))
                        .with_expr(format!(
                            "f({})={} lies in im f ∩ P but {} is not positive",
                            self.dom.label(a),
                            self.cod.label(self.map[a]),
                            self.dom.label(a)
                        )),
                ));
            }
        }
        Ok(Verdict::pass())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog;

    fn c2(cone: &[usize]) -> Arc<FiniteRpoGroup> {
        Arc::new(FiniteRpoGroup::new("C2", catalog::cyclic(2), cone).unwrap())
    }

    #[test]
    fn trivial_group_is_valid_and_preordered() {
        let z = FiniteRpoGroup::zero();
        assert!(z.validate().holds);
        assert!(z.is_preordered().holds);
    }

    #[test]
    fn cone_out_of_range_is_structural() {
        assert!(matches!(
            FiniteRpoGroup::new("x", catalog::cyclic(2), &[0, 2]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn cone_missing_identity_fails() {
        let g = FiniteRpoGroup::new("x", catalog::cyclic(3), &[1]).unwrap();
        assert_eq!(g.validate().witness_law(), Some("cone-identity"));
        let g = FiniteRpoGroup::new("x", catalog::cyclic(3), &[0, 1]).unwrap();
        assert_eq!(g.validate().witness_law(), Some("cone-closure"));
    }

    #[test]
    fn trivial_cone_is_always_preordered() {
        for g in catalog::groups_up_to(12) {
            assert!(FiniteRpoGroup::discrete("g", g.group).is_preordered().holds);
        }
    }

    #[test]
    fn morphism_map_shape() {
        assert!(matches!(
            RpoMorphism::new(c2(&[0]), c2(&[0]), vec![0]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let g = c2(&[0, 1]);
        let (k, _) = RpoMorphism::identity(g.clone()).kernel();
        assert_eq!(k.order(), 1);
        let (k, inc) = RpoMorphism::zero(g.clone(), Arc::new(FiniteRpoGroup::zero())).kernel();
        assert_eq!(k.order(), 2);
        assert_eq!(k.cone().len(), 2);
        assert!(inc.is_normal_mono().unwrap().holds);
    }

    #[test]
    fn identity_into_bigger_cone_is_not_normal() {
        // ({0,a}, {0}) -> (C2, C2) via identity
        let f = RpoMorphism::new(c2(&[0]), c2(&[0, 1]), vec![0, 1]).unwrap();
        assert!(f.check().holds);
        let v = f.is_normal_mono().unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.law, "cone-equality");
        assert_eq!(w.get("a"), Some("1"));
    }

    #[test]
    fn non_injective_is_a_precondition_error() {
        let f = RpoMorphism::zero(c2(&[0]), c2(&[0]));
        assert!(matches!(f.is_normal_mono(), Err(Error::Precondition { .. })));
    }
}

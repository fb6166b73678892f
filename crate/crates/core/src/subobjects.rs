//! Normal subobjects, effective equivalence relations, the lattice of
//! normal subobjects, and Huq/Smith commutativity.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finite::enumerate::normal_subgroups;
use crate::finite::rpo::{FiniteRpoGroup, RpoMorphism};
use crate::verdict::{Verdict, Witness};

/// A subgroup of a carrier with some cone contained in `subgroup ∩ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    pub subgroup: BitSet,
    pub cone: BitSet,
}

/// A normal subgroup `N` with its forced cone `N ∩ P`.
#[derive(Clone, Debug)]
pub struct NormalSubobject {
    carrier: Arc<FiniteRpoGroup>,
    subgroup: BitSet,
}

impl PartialEq for NormalSubobject {
    fn eq(&self, other: &Self) -> bool {
        self.subgroup == other.subgroup && *self.carrier == *other.carrier
    }
}

impl NormalSubobject {
    pub fn new(carrier: Arc<FiniteRpoGroup>, subgroup: BitSet) -> Result<Self> {
        let g = carrier.group();
        if subgroup.capacity() != g.order() {
            return Err(Error::structural("subgroup bitset does not match the carrier"));
        }
        if !g.is_submonoid(&subgroup) {
            return Err(Error::precondition("subgroup", format!("{subgroup:?} is not a subgroup")));
        }
        if let Some((x, a)) = g.normality_violation(&subgroup) {
            return Err(Error::precondition(
                "normal subgroup",
                format!("{}+{}-{} leaves the subgroup", carrier.label(x), carrier.label(a), carrier.label(x)),
            ));
        }
        Ok(NormalSubobject { carrier, subgroup })
    }

    pub fn zero(carrier: Arc<FiniteRpoGroup>) -> Self {
        let n = carrier.order();
        NormalSubobject {
            carrier,
            subgroup: BitSet::from_indices(n, [0]),
        }
    }

    pub fn whole(carrier: Arc<FiniteRpoGroup>) -> Self {
        let n = carrier.order();
        NormalSubobject {
            carrier,
            subgroup: BitSet::full(n),
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteRpoGroup> {
        &self.carrier
    }

    pub fn subgroup(&self) -> &BitSet {
        &self.subgroup
    }

    pub fn cone(&self) -> BitSet {
        self.subgroup.intersection(self.carrier.cone().members())
    }

    pub fn order(&self) -> usize {
        self.subgroup.count()
    }

    pub fn as_subobject(&self) -> Subobject {
        Subobject {
            subgroup: self.subgroup.clone(),
            cone: self.cone(),
        }
    }

    /// `(N, N∩P)` as an rpo group with its inclusion.
    pub fn to_rpo(&self) -> (Arc<FiniteRpoGroup>, RpoMorphism) {
        self.carrier.restrict(&self.subgroup, "N")
    }

    fn describe(&self) -> String {
        let items: Vec<String> = self.subgroup.iter().map(|a| self.carrier.label(a)).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// Ordered pairs of carrier elements, `(a, b)` stored at `a * n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    bits: BitSet,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            n,
            bits: BitSet::new(n * n),
        }
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits.insert(a * self.n + b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits.contains(a * self.n + b)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.iter().map(|i| (i / self.n, i % self.n))
    }

    /// Relational composite: `(a,c)` with `(a,b) ∈ self`, `(b,c) ∈ other`.
    pub fn then(&self, other: &PairSet) -> PairSet {
        let mut out = PairSet::new(self.n);
        for (a, b) in self.iter() {
            for c in 0..self.n {
                if other.contains(b, c) {
                    out.insert(a, c);
                }
            }
        }
        out
    }

    /// First pair in one set but not the other.
    pub fn first_difference(&self, other: &PairSet) -> Option<(usize, usize)> {
        self.iter()
            .find(|&(a, b)| !other.contains(a, b))
            .or_else(|| other.iter().find(|&(a, b)| !self.contains(a, b)))
    }
}

/// The kernel pair of a morphism out of `carrier`: the congruence of a
/// normal subgroup `N`, with cone pairs `{(a,b) ∈ P×P : a ∼ b}`.
#[derive(Clone, Debug)]
pub struct EffEqRelation {
    carrier: Arc<FiniteRpoGroup>,
    normal: BitSet,
    class_of: Vec<usize>,
}

impl EffEqRelation {
    pub fn from_normal(carrier: Arc<FiniteRpoGroup>, normal: BitSet) -> Result<Self> {
        let n = NormalSubobject::new(carrier, normal)?;
        Ok(Self::of_normal(&n))
    }

    pub fn of_normal(n: &NormalSubobject) -> Self {
        let carrier = n.carrier.clone();
        let g = carrier.group();
        let mut class_of = vec![usize::MAX; g.order()];
        let mut next = 0;
        for a in g.elements() {
            if class_of[a] == usize::MAX {
                for k in n.subgroup.iter() {
                    class_of[g.op(a, k)] = next;
                }
                next += 1;
            }
        }
        EffEqRelation {
            carrier,
            normal: n.subgroup.clone(),
            class_of,
        }
    }

    /// Reads a partition; it must be the coset partition of a normal subgroup.
    pub fn from_partition(carrier: Arc<FiniteRpoGroup>, partition: &[Vec<usize>]) -> Result<Self> {
        let n = carrier.order();
        let mut class_of = vec![usize::MAX; n];
        for (i, block) in partition.iter().enumerate() {
            for &a in block {
                if a >= n {
                    return Err(Error::structural(format!("element {a} is out of range 0..{n}")));
                }
                if class_of[a] != usize::MAX {
                    return Err(Error::structural(format!("element {a} appears in two blocks")));
                }
                class_of[a] = i;
            }
        }
        if let Some(a) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::structural(format!("element {a} is in no block")));
        }
        let normal = BitSet::from_indices(n, (0..n).filter(|&a| class_of[a] == class_of[0]));
        let r = Self::from_normal(carrier, normal)?;
        let g = r.carrier.group();
        for a in g.elements() {
            for b in g.elements() {
                if (class_of[a] == class_of[b]) != r.related(a, b) {
                    return Err(Error::precondition(
                        "coset partition",
                        format!("blocks are not the cosets of the class of 0 (elements {a}, {b})"),
                    ));
                }
            }
        }
        Ok(r)
    }

    pub fn discrete(carrier: Arc<FiniteRpoGroup>) -> Self {
        Self::of_normal(&NormalSubobject::zero(carrier))
    }

    pub fn indiscrete(carrier: Arc<FiniteRpoGroup>) -> Self {
        Self::of_normal(&NormalSubobject::whole(carrier))
    }

    pub fn carrier(&self) -> &Arc<FiniteRpoGroup> {
        &self.carrier
    }

    pub fn normal(&self) -> &BitSet {
        &self.normal
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let k = self.class_of.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    pub fn group_pairs(&self) -> PairSet {
        let n = self.carrier.order();
        let mut out = PairSet::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.related(a, b) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    pub fn cone_pairs(&self) -> PairSet {
        let n = self.carrier.order();
        let mut out = PairSet::new(n);
        for a in self.carrier.cone().iter() {
            for b in self.carrier.cone().iter() {
                if self.related(a, b) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    /// The relation as an rpo group: pairs `(a,b)` with `a ∼ b`, indexed in
    /// ascending order of `a * n + b`, with the cone pairs as cone.
    pub fn to_rpo(&self) -> (Arc<FiniteRpoGroup>, Vec<(usize, usize)>) {
        let g = self.carrier.group();
        let n = g.order();
        let sq = Arc::new(self.carrier.product(&self.carrier));
        let pairs = self.group_pairs();
        let set = BitSet::from_indices(n * n, pairs.iter().map(|(a, b)| a * n + b));
        let (r, _) = sq.restrict(&set, "R");
        (r, pairs.iter().collect())
    }

    fn same_carrier(&self, other: &EffEqRelation) -> Result<()> {
        if *self.carrier != *other.carrier {
            return Err(Error::CarrierMismatch(format!(
                "{} and {} are different carriers",
                self.carrier.name(),
                other.carrier.name()
            )));
        }
        Ok(())
    }
}

pub fn eff_rel_of(f: &RpoMorphism) -> EffEqRelation {
    let (_, inc) = f.kernel();
    let n = inc.image();
    EffEqRelation::of_normal(&NormalSubobject {
        carrier: f.dom().clone(),
        subgroup: n,
    })
}

/// Composite pair sets `r ∘ s` (first `r`, then `s`): group pairs and cone
/// pairs are composed separately.
pub fn rel_compose(r: &EffEqRelation, s: &EffEqRelation) -> Result<(PairSet, PairSet)> {
    r.same_carrier(s)?;
    Ok((r.group_pairs().then(&s.group_pairs()), r.cone_pairs().then(&s.cone_pairs())))
}

pub fn permutes(r: &EffEqRelation, s: &EffEqRelation) -> Result<Verdict> {
    let (rs_g, rs_c) = rel_compose(r, s)?;
    let (sr_g, sr_c) = rel_compose(s, r)?;
    let lbl = |a| r.carrier.label(a);
    if let Some((a, b)) = rs_g.first_difference(&sr_g) {
        return Ok(Verdict::fail(Witness::new("group pairs").bind("a", lbl(a)).bind("b", lbl(b))));
    }
    if let Some((a, b)) = rs_c.first_difference(&sr_c) {
        return Ok(Verdict::fail(Witness::new("cone pairs").bind("a", lbl(a)).bind("b", lbl(b))));
    }
    Ok(Verdict::pass())
}

/// The class of 0 with cone `{b : (0,b) is a cone pair}`.
pub fn normalization(r: &EffEqRelation) -> NormalSubobject {
    NormalSubobject {
        carrier: r.carrier.clone(),
        subgroup: r.normal.clone(),
    }
}

/// Cone of the normalization read off the cone pairs, for cross-checking
/// against `N ∩ P`.
pub fn normalization_cone(r: &EffEqRelation) -> BitSet {
    let cp = r.cone_pairs();
    BitSet::from_indices(r.carrier.order(), (0..r.carrier.order()).filter(|&b| cp.contains(0, b)))
}

/// Lattice given by tables over `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl LatticeTables {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Builds join and meet from a partial order, if it is a lattice.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        let bound = |upper: bool, a: usize, b: usize| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| if upper { leq[a][c] && leq[b][c] } else { leq[c][a] && leq[c][b] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if upper { leq[c][d] } else { leq[d][c] }))
        };
        let table = |upper: bool| -> Result<Vec<Vec<usize>>> {
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            bound(upper, a, b).ok_or_else(|| {
                                Error::structural(format!("{} and {} have no {}", labels[a], labels[b], if upper { "join" } else { "meet" }))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let (join, meet) = (table(true)?, table(false)?);
        Ok(LatticeTables { labels, leq, join, meet })
    }

    /// Join and meet agree with the order (least upper / greatest lower bounds).
    pub fn check_consistent(&self) -> Verdict {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let (j, m) = (self.join[a][b], self.meet[a][b]);
                let ub = self.leq[a][j] && self.leq[b][j];
                let lb = self.leq[m][a] && self.leq[m][b];
                let least = (0..n).all(|c| !(self.leq[a][c] && self.leq[b][c]) || self.leq[j][c]);
                let greatest = (0..n).all(|c| !(self.leq[c][a] && self.leq[c][b]) || self.leq[c][m]);
                if !(ub && lb && least && greatest) {
                    return Verdict::fail(
                        Witness::new("lattice tables")
                            .bind("a", &self.labels[a])
                            .bind("b", &self.labels[b]),
                    );
                }
            }
        }
        Verdict::pass()
    }

    /// The pentagon `0 < a < c < 1`, `0 < b < 1`.
    pub fn pentagon() -> Self {
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let below = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)];
        let mut leq = vec![vec![false; 5]; 5];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (x, y) in below {
            leq[x][y] = true;
        }
        LatticeTables::from_order(labels, leq).expect("the pentagon is a lattice")
    }
}

/// Normal subobjects of `(G,P)` with inclusion, join and meet tables.
#[derive(Clone, Debug)]
pub struct NormalLattice {
    pub elements: Vec<NormalSubobject>,
    pub tables: LatticeTables,
}

impl NormalLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, subgroup: &BitSet) -> Option<usize> {
        self.elements.iter().position(|e| e.subgroup == *subgroup)
    }
}

/// `N·M = {n+m}`.
pub fn product_set(g: &FiniteRpoGroup, n: &BitSet, m: &BitSet) -> BitSet {
    let grp = g.group();
    BitSet::from_indices(g.order(), n.iter().flat_map(|a| m.iter().map(move |b| grp.op(a, b))))
}

pub fn normal_lattice(g: &Arc<FiniteRpoGroup>) -> NormalLattice {
    let subs = normal_subgroups(g.group());
    let elements: Vec<NormalSubobject> = subs
        .iter()
        .map(|s| NormalSubobject {
            carrier: g.clone(),
            subgroup: s.clone(),
        })
        .collect();
    let k = elements.len();
    let idx = |s: &BitSet| subs.iter().position(|t| t == s).expect("normal subgroups are closed under join and meet");
    let leq = (0..k).map(|a| (0..k).map(|b| subs[a].is_subset(&subs[b])).collect()).collect();
    let join = (0..k).map(|a| (0..k).map(|b| idx(&product_set(g, &subs[a], &subs[b]))).collect()).collect();
    let meet = (0..k).map(|a| (0..k).map(|b| idx(&subs[a].intersection(&subs[b]))).collect()).collect();
    let labels = elements.iter().map(|e| e.describe()).collect();
    NormalLattice {
        elements,
        tables: LatticeTables { labels, leq, join, meet },
    }
}

/// `(a∧b)∨(c∧b) = ((a∧b)∨c)∧b` for all triples.
pub fn check_modular(l: &LatticeTables) -> Verdict {
    let n = l.size();
    for a in 0..n {
        for b in 0..n {
            let ab = l.meet[a][b];
            for c in 0..n {
                let lhs = l.join[ab][l.meet[c][b]];
                let rhs = l.meet[l.join[ab][c]][b];
                if lhs != rhs {
                    return Verdict::fail(
                        Witness::new("modular identity")
                            .bind("a", &l.labels[a])
                            .bind("b", &l.labels[b])
                            .bind("c", &l.labels[c])
                            .with_expr(format!(
                                "(a∧b)∨(c∧b)={} but ((a∧b)∨c)∧b={}",
                                l.labels[lhs], l.labels[rhs]
                            )),
                    );
                }
            }
        }
    }
    Verdict::pass()
}

/// Checks that `N ↦ (N, N∩P)` is a bijection onto the normal subobjects
/// preserving joins and meets, using subgroup generation for the plain
/// group's joins.
pub fn check_lattice_iso(g: &Arc<FiniteRpoGroup>) -> Verdict {
    let lat = normal_lattice(g);
    let grp = g.group();
    let plain: Vec<BitSet> = crate::finite::enumerate::subgroups(grp)
        .into_iter()
        .filter(|h| grp.is_normal(h))
        .collect();
    if plain.len() != lat.len() {
        return Verdict::fail(Witness::new("bijection").bind("plain", plain.len()).bind("rpo", lat.len()));
    }
    let mut image = Vec::with_capacity(plain.len());
    for n in &plain {
        match lat.index_of(n) {
            Some(i) => image.push(i),
            None => return Verdict::fail(Witness::new("bijection").bind("N", format!("{n:?}"))),
        }
        let cone = lat.elements[image[image.len() - 1]].cone();
        if cone != n.intersection(g.cone().members()) {
            return Verdict::fail(Witness::new("cone is N∩P").bind("N", format!("{n:?}")));
        }
    }
    for (i, n) in plain.iter().enumerate() {
        for (j, m) in plain.iter().enumerate() {
            let join = grp.join(n, m);
            let meet = n.intersection(m);
            let (a, b) = (image[i], image[j]);
            if lat.elements[lat.tables.join[a][b]].subgroup != join {
                return Verdict::fail(Witness::new("preserves join").bind("N", &lat.tables.labels[a]).bind("M", &lat.tables.labels[b]));
            }
            if lat.elements[lat.tables.meet[a][b]].subgroup != meet {
                return Verdict::fail(Witness::new("preserves meet").bind("N", &lat.tables.labels[a]).bind("M", &lat.tables.labels[b]));
            }
            let cone = lat.elements[lat.tables.join[a][b]].cone();
            if cone != join.intersection(g.cone().members()) {
                return Verdict::fail(Witness::new("join cone").bind("N", &lat.tables.labels[a]).bind("M", &lat.tables.labels[b]));
            }
        }
    }
    Verdict::pass()
}

/// Elementwise commutation of the two subgroups; the connecting map
/// `(a,b) ↦ a+b` is then a morphism, and its monotonicity is re-checked.
pub fn huq_commute(carrier: &FiniteRpoGroup, x: &Subobject, y: &Subobject) -> Verdict {
    let g = carrier.group();
    for a in x.subgroup.iter() {
        for b in y.subgroup.iter() {
            if g.op(a, b) != g.op(b, a) {
                return Verdict::fail(
                    Witness::new("commutation")
                        .bind("a", carrier.label(a))
                        .bind("b", carrier.label(b))
                        .with_expr(format!(
                            "{a}+{b}={} but {b}+{a}={}",
                            carrier.label(g.op(a, b)),
                            carrier.label(g.op(b, a)),
                            a = carrier.label(a),
                            b = carrier.label(b)
                        )),
                );
            }
        }
    }
    for p in x.cone.iter() {
        for q in y.cone.iter() {
            if !carrier.is_positive(g.op(p, q)) {
                return Verdict::fail(Witness::new("connector monotone").bind("p", carrier.label(p)).bind("q", carrier.label(q)));
            }
        }
    }
    Verdict::pass()
}

/// Tests the connector `p(a,b,c) = a-b+c` on `R ×_X S = {(a,b,c) : a R b, b S c}`.
/// A failure means this candidate fails, not that no connector exists.
pub fn smith_commute(r: &EffEqRelation, s: &EffEqRelation) -> Result<Verdict> {
    r.same_carrier(s)?;
    let carrier = &r.carrier;
    let g = carrier.group();
    let p = |(a, b, c): (usize, usize, usize)| g.op(g.sub(a, b), c);
    let add = |(a, b, c): (usize, usize, usize), (x, y, z): (usize, usize, usize)| (g.op(a, x), g.op(b, y), g.op(c, z));
    let mut pullback = Vec::new();
    for b in g.elements() {
        for a in g.elements().filter(|&a| r.related(a, b)) {
            for c in g.elements().filter(|&c| s.related(b, c)) {
                pullback.push((a, b, c));
            }
        }
    }
    pullback.sort();
    let induced_gens = |set: &BitSet| {
        let list = set.to_vec();
        g.induced(&list).generators().into_iter().map(move |i| list[i]).collect::<Vec<_>>()
    };
    let mut gens: Vec<(usize, usize, usize)> = Vec::new();
    gens.extend(induced_gens(&r.normal).into_iter().map(|n| (n, 0, 0)));
    gens.extend(g.generators().into_iter().map(|d| (d, d, d)));
    gens.extend(induced_gens(&s.normal).into_iter().map(|m| (0, 0, m)));
    let lbl = |(a, b, c): (usize, usize, usize)| format!("({},{},{})", carrier.label(a), carrier.label(b), carrier.label(c));
    for &x in &pullback {
        for &y in &gens {
            if p(add(x, y)) != g.op(p(x), p(y)) {
                return Ok(Verdict::fail(
                    Witness::new("connector is a homomorphism")
                        .bind("x", lbl(x))
                        .bind("y", lbl(y))
                        .with_expr(format!(
                            "p({}+{})={} but p({})+p({})={}",
                            lbl(x),
                            lbl(y),
                            carrier.label(p(add(x, y))),
                            lbl(x),
                            lbl(y),
                            carrier.label(g.op(p(x), p(y)))
                        )),
                ));
            }
        }
    }
    let (rc, sc) = (r.cone_pairs(), s.cone_pairs());
    for &(a, b, c) in &pullback {
        if rc.contains(a, b) && sc.contains(b, c) && !carrier.is_positive(p((a, b, c))) {
            return Ok(Verdict::fail(Witness::new("connector monotone").bind("x", lbl((a, b, c)))));
        }
    }
    Ok(Verdict::pass())
}

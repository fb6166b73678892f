use std::collections::VecDeque;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::verdict::Witness;

/// A finite group given by its Cayley table.
///
/// Elements are indices `0..order`; index 0 is the identity. The table is
/// stored row-major, `op(a, b) = table[a * order + b]`. Construction only
/// checks the table's shape; [`FiniteGroup::law_violation`] checks the group
/// axioms. Equality compares tables only, not labels.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Option<Arc<Vec<String>>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

const NO_INVERSE: usize = usize::MAX;

impl FiniteGroup {
    /// Builds a group from table rows, checking only shape and index range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::structural("a group needs at least one element"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::structural(format!(
                    "table row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::structural(format!(
                        "table[{i}][{j}] = {v} is out of range 0..{n}"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        Ok(Self::from_flat(n, table))
    }

    /// Builds a group from a closure; used by the constructors in `catalog`.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        assert!(order > 0);
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b));
            }
        }
        Self::from_flat(order, table)
    }

    fn from_flat(order: usize, table: Vec<usize>) -> Self {
        let mut inverse = vec![NO_INVERSE; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 && table[b * order + a] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
        }
        FiniteGroup {
            order,
            table,
            inverse,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(Arc::new(labels));
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref().map(|v| v.as_slice())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Group inverse `-a`. Only meaningful on a validated group.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.op(a, self.neg(b))
    }

    /// Conjugation `x + a - x`.
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.sub(self.op(x, a), x)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// First violated group law, scanning elements in index order.
    pub fn law_violation(&self) -> Option<Witness> {
        let l = |a| self.label(a);
        for a in self.elements() {
            if self.op(0, a) != a || self.op(a, 0) != a {
                return Some(
                    Witness::new("identity")
                        .bind("e", l(0))
                        .bind("a", l(a))
                        .with_expr(format!(
                            "element 0 is not a two-sided identity at a={}",
                            l(a)
                        )),
                );
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.op(a, b);
                for c in self.elements() {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some(
                            Witness::new("associativity")
                                .bind("a", l(a))
                                .bind("b", l(b))
                                .bind("c", l(c))
                                .with_expr(format!(
                                    "({}+{})+{} = {} but {}+({}+{}) = {}",
                                    l(a),
                                    l(b),
                                    l(c),
                                    l(self.op(ab, c)),
                                    l(a),
                                    l(b),
                                    l(c),
                                    l(self.op(a, self.op(b, c)))
                                )),
                        );
                    }
                }
            }
        }
        for a in self.elements() {
            if self.inverse[a] == NO_INVERSE {
                return Some(Witness::new("inverse").bind("a", l(a)));
            }
        }
        None
    }

    /// Order of the element `a` (smallest k >= 1 with k·a = 0).
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
            if k > self.order {
                // not a group element; the table is broken
                return 0;
            }
        }
        k
    }

    /// Closure of `seed ∪ {0}` under the group operation. In a finite group
    /// this is the generated subgroup.
    pub fn generate(&self, seed: impl IntoIterator<Item = usize>) -> BitSet {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let gens: Vec<usize> = seed.into_iter().collect();
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        for &g in &gens {
            if set.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = self.op(a, g);
                if set.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        set
    }

    /// Smallest subgroup containing both sets.
    pub fn join(&self, a: &BitSet, b: &BitSet) -> BitSet {
        self.generate(a.iter().chain(b.iter()))
    }

    /// Whether `set` is closed under the operation and contains 0.
    pub fn is_submonoid(&self, set: &BitSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.op(a, b))))
    }

    pub fn is_normal(&self, set: &BitSet) -> bool {
        self.normality_violation(set).is_none()
    }

    /// First `(x, a)` with `a ∈ set`, `x + a - x ∉ set`.
    pub fn normality_violation(&self, set: &BitSet) -> Option<(usize, usize)> {
        for x in self.elements() {
            for a in set.iter() {
                if !set.contains(self.conj(x, a)) {
                    return Some((x, a));
                }
            }
        }
        None
    }

    /// A generating set, chosen greedily from elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        let mut cand: Vec<usize> = (1..self.order).collect();
        cand.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut h = self.generate([]);
        for a in cand {
            if !h.contains(a) {
                gens.push(a);
                h = self.generate(gens.iter().copied());
                if h.count() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn center(&self) -> BitSet {
        BitSet::from_indices(
            self.order,
            self.elements()
                .filter(|&z| self.elements().all(|x| self.op(x, z) == self.op(z, x))),
        )
    }

    /// The subgroup on `elements` (which must start with 0 and be closed),
    /// re-indexed in the given order, with inherited labels.
    pub fn induced(&self, elements: &[usize]) -> FiniteGroup {
        debug_assert_eq!(elements.first(), Some(&0));
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let g = FiniteGroup::from_fn(elements.len(), |a, b| {
            pos[self.op(elements[a], elements[b])]
        });
        g.with_labels(elements.iter().map(|&e| self.label(e)).collect())
    }

    /// Direct product; the pair `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let g = FiniteGroup::from_fn(self.order * m, |x, y| {
            self.op(x / m, y / m) * m + other.op(x % m, y % m)
        });
        let labels = (0..self.order * m)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        g.with_labels(labels)
    }

    /// Relabels elements by the permutation `perm` (old index -> new index).
    pub fn permuted(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.order;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let g = FiniteGroup::from_fn(n, |a, b| perm[self.op(inv[a], inv[b])]);
        g.with_labels((0..n).map(|a| self.label(inv[a])).collect())
    }

    /// Index of a two-sided identity, if one exists.
    pub fn find_identity(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|a| self.op(e, a) == a && self.op(a, e) == a))
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

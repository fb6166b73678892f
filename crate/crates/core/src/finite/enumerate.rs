//! Exhaustive enumeration: cones, homomorphisms, automorphisms, isomorphisms.

use std::collections::{BTreeSet, VecDeque};
use std::ops::ControlFlow;

use crate::bitset::BitSet;
use crate::finite::group::FiniteGroup;
use crate::finite::rpo::{Cone, FiniteRpoGroup};

/// All subgroups of `g`, sorted by size then by membership bits.
pub fn subgroups(g: &FiniteGroup) -> Vec<BitSet> {
    let cyclic: BTreeSet<BitSet> = g.elements().map(|a| g.generate([a])).collect();
    let mut seen: BTreeSet<BitSet> = cyclic.clone();
    let mut queue: VecDeque<BitSet> = cyclic.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let j = g.join(&h, c);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<BitSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    out
}

/// All cones of `g`. In a finite group these are exactly the subgroups.
pub fn enumerate_cones(g: &FiniteGroup) -> Vec<Cone> {
    subgroups(g).into_iter().map(Cone::new).collect()
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<BitSet> {
    subgroups(g).into_iter().filter(|h| g.is_normal(h)).collect()
}

/// Visits every homomorphism `src -> dst` as a map array, in lexicographic
/// order of generator images. With `injective`, only injective ones.
pub fn for_each_hom<B>(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    injective: bool,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if injective && src.order() > dst.order() {
        return None;
    }
    let gens = src.generators();
    let gen_orders: Vec<usize> = gens.iter().map(|&a| src.element_order(a)).collect();
    let dst_orders: Vec<usize> = dst.elements().map(|b| dst.element_order(b)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| {
            dst.elements()
                .filter(|&b| if injective { dst_orders[b] == o } else { o % dst_orders[b] == 0 })
                .collect()
        })
        .collect();
    let mut images = vec![0; gens.len()];
    let mut map = vec![usize::MAX; src.order()];
    let mut seen = BitSet::new(dst.order());
    search(src, dst, &gens, &candidates, injective, 0, &mut images, &mut map, &mut seen, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn search<B>(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    injective: bool,
    depth: usize,
    images: &mut Vec<usize>,
    map: &mut Vec<usize>,
    seen: &mut BitSet,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if depth == gens.len() {
        if extend(src, dst, gens, images, map) && (!injective || is_injective(map, seen)) {
            if let ControlFlow::Break(b) = visit(map) {
                return Some(b);
            }
        }
        return None;
    }
    for &c in &candidates[depth] {
        images[depth] = c;
        // Prune on the subgroup generated so far.
        if extend(src, dst, &gens[..=depth], &images[..=depth], map)
            && (!injective || is_injective_partial(map, seen))
        {
            if let Some(b) =
                search(src, dst, gens, candidates, injective, depth + 1, images, map, seen, visit)
            {
                return Some(b);
            }
        }
    }
    None
}

/// Extends generator images along the Cayley graph, reporting consistency.
/// Entries outside the generated subgroup are left as `usize::MAX`.
fn extend(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], images: &[usize], map: &mut [usize]) -> bool {
    map.fill(usize::MAX);
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let b = src.op(a, g);
            let v = dst.op(map[a], img);
            if map[b] == usize::MAX {
                map[b] = v;
                queue.push_back(b);
            } else if map[b] != v {
                return false;
            }
        }
    }
    true
}

fn is_injective_partial(map: &[usize], seen: &mut BitSet) -> bool {
    *seen = BitSet::new(seen.capacity());
    map.iter().filter(|&&v| v != usize::MAX).all(|&v| seen.insert(v))
}

fn is_injective(map: &[usize], seen: &mut BitSet) -> bool {
    is_injective_partial(map, seen)
}

pub fn homomorphisms(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_hom::<()>(src, dst, false, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// All automorphisms as permutations, sorted; the identity comes first.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_hom::<()>(g, g, true, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Automorphisms `f` with `f(P) ⊆ P`. The inverse is not required to be
/// monotone (in the finite case it is anyway, as `f(P)` and `P` have equal size).
pub fn monotone_automorphisms(g: &FiniteRpoGroup) -> Vec<Vec<usize>> {
    automorphisms(g.group())
        .into_iter()
        .filter(|f| g.cone().iter().all(|p| g.is_positive(f[p])))
        .collect()
}

pub fn find_group_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    for_each_hom(a, b, true, |m| ControlFlow::Break(m.to_vec()))
}

/// A group isomorphism carrying cone onto cone, if any.
pub fn find_isomorphism(a: &FiniteRpoGroup, b: &FiniteRpoGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.cone().len() != b.cone().len() {
        return None;
    }
    for_each_hom(a.group(), b.group(), true, |m| {
        if a.cone().iter().all(|p| b.is_positive(m[p])) {
            ControlFlow::Break(m.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    })
}

//! Small groups and named rpo groups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::group::FiniteGroup;
use crate::finite::perm::{self, Perm};
use crate::finite::rpo::{Cone, FiniteRpoGroup};

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn(n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`: `r^k s^f` has index `k + n*f`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let g = FiniteGroup::from_fn(2 * n, |a, b| {
        let (k, f) = (a % n, a / n);
        let (l, h) = (b % n, b / n);
        let l = if f == 1 { (n - l) % n } else { l };
        (k + l) % n + n * ((f + h) % 2)
    });
    let labels = (0..2 * n)
        .map(|a| match (a % n, a / n) {
            (0, 0) => "e".to_string(),
            (k, 0) => format!("r{k}"),
            (0, _) => "s".to_string(),
            (k, _) => format!("r{k}s"),
        })
        .collect();
    g.with_labels(labels)
}

/// Dicyclic group of order `4n`: `a^k x^f` has index `k + 2n*f`, with
/// `x² = a^n` and `x a x⁻¹ = a⁻¹`. `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let g = FiniteGroup::from_fn(2 * m, |a, b| {
        let (k, f) = (a % m, a / m);
        let (l, h) = (b % m, b / m);
        let l = if f == 1 { (m - l) % m } else { l };
        let extra = if f == 1 && h == 1 { n } else { 0 };
        (k + l + extra) % m + m * ((f + h) % 2)
    });
    let labels = (0..2 * m)
        .map(|a| match (a % m, a / m) {
            (0, 0) => "e".to_string(),
            (k, 0) => format!("a{k}"),
            (0, _) => "x".to_string(),
            (k, _) => format!("a{k}x"),
        })
        .collect();
    g.with_labels(labels)
}

/// The group of the given permutations under composition (`a+b = a∘b`),
/// labelled in cycle notation. The list must be closed and start with the
/// identity.
pub fn from_permutations(perms: &[Perm]) -> FiniteGroup {
    let index = |p: &Perm| perms.iter().position(|q| q == p).expect("closed under composition");
    let g = FiniteGroup::from_fn(perms.len(), |a, b| index(&perm::compose(&perms[a], &perms[b])));
    g.with_labels(perms.iter().map(|p| perm::to_cycles(p)).collect())
}

/// `S_k`, elements in lexicographic order of their image arrays.
pub fn symmetric(k: usize) -> FiniteGroup {
    from_permutations(&perm::all(k))
}

pub fn symmetric_perms(k: usize) -> Vec<Perm> {
    perm::all(k)
}

pub fn alternating(k: usize) -> FiniteGroup {
    let perms: Vec<Perm> = perm::all(k).into_iter().filter(|p| perm::is_even(p)).collect();
    from_permutations(&perms)
}

/// Index of the permutation written in cycle notation, within `S_k`.
pub fn symmetric_index(cycles: &str, k: usize) -> Result<usize> {
    let p = perm::parse_cycles(cycles, k)?;
    Ok(perm::all(k).iter().position(|q| *q == p).expect("all permutations listed"))
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: FiniteGroup,
}

/// One representative of every isomorphism class of groups of order `n`,
/// for `1 <= n <= 15`.
pub fn groups_of_order(n: usize) -> Vec<CatalogEntry> {
    let e = |name: &'static str, group: FiniteGroup| CatalogEntry { name, group };
    let c = cyclic;
    match n {
        1 => vec![e("C1", c(1))],
        2 => vec![e("C2", c(2))],
        3 => vec![e("C3", c(3))],
        4 => vec![e("C4", c(4)), e("C2xC2", c(2).product(&c(2)))],
        5 => vec![e("C5", c(5))],
        6 => vec![e("C6", c(6)), e("S3", symmetric(3))],
        7 => vec![e("C7", c(7))],
        8 => vec![
            e("C8", c(8)),
            e("C4xC2", c(4).product(&c(2))),
            e("C2xC2xC2", c(2).product(&c(2)).product(&c(2))),
            e("D4", dihedral(4)),
            e("Q8", dicyclic(2)),
        ],
        9 => vec![e("C9", c(9)), e("C3xC3", c(3).product(&c(3)))],
        10 => vec![e("C10", c(10)), e("D5", dihedral(5))],
        11 => vec![e("C11", c(11))],
        12 => vec![
            e("C12", c(12)),
            e("C6xC2", c(6).product(&c(2))),
            e("D6", dihedral(6)),
            e("A4", alternating(4)),
            e("Dic3", dicyclic(3)),
        ],
        13 => vec![e("C13", c(13))],
        14 => vec![e("C14", c(14)), e("D7", dihedral(7))],
        15 => vec![e("C15", c(15))],
        _ => Vec::new(),
    }
}

pub const MAX_CATALOG_ORDER: usize = 15;

pub fn groups_up_to(n: usize) -> Vec<CatalogEntry> {
    (1..=n.min(MAX_CATALOG_ORDER)).flat_map(groups_of_order).collect()
}

fn group_atom(name: &str) -> Option<FiniteGroup> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if name == "Q8" {
        return Some(dicyclic(2));
    }
    if let Some(n) = num("Dic").filter(|&n| (1..=12).contains(&n)) {
        return Some(dicyclic(n));
    }
    if let Some(n) = num("C").filter(|&n| (1..=64).contains(&n)) {
        return Some(cyclic(n));
    }
    if let Some(n) = num("D").filter(|&n| (1..=32).contains(&n)) {
        return Some(dihedral(n));
    }
    if let Some(k) = num("S").filter(|&k| (1..=5).contains(&k)) {
        return Some(symmetric(k));
    }
    if let Some(k) = num("A").filter(|&k| (1..=5).contains(&k)) {
        return Some(alternating(k));
    }
    None
}

/// Resolves names such as `C4`, `D5`, `S4`, `A4`, `Q8`, `Dic3` and direct
/// products like `C2xC2`.
pub fn group_by_name(name: &str) -> Option<FiniteGroup> {
    let mut parts = name.split('x');
    let mut g = group_atom(parts.next()?)?;
    for p in parts {
        g = g.product(&group_atom(p)?);
    }
    Some(g)
}

/// Built-in rpo groups: `G` (trivial cone), `G_full` (whole group), plus
/// `S4_A4` and `S4_P` (cone `{Id,(12)(34)}`).
pub fn rpo_by_name(name: &str) -> Result<Arc<FiniteRpoGroup>> {
    let unknown = || Error::UnknownName(name.to_string());
    let rpo = match name {
        "S4_A4" => {
            let g = symmetric(4);
            let cone = Cone::from_indices(
                24,
                perm::all(4).iter().enumerate().filter(|(_, p)| perm::is_even(p)).map(|(i, _)| i),
            );
            FiniteRpoGroup::from_parts(name, g, cone)
        }
        "S4_P" => {
            let g = symmetric(4);
            let cone = Cone::from_indices(24, [0, symmetric_index("(12)(34)", 4)?]);
            FiniteRpoGroup::from_parts(name, g, cone)
        }
        _ => match name.strip_suffix("_full") {
            Some(base) => FiniteRpoGroup::indiscrete(name, group_by_name(base).ok_or_else(unknown)?),
            None => FiniteRpoGroup::discrete(name, group_by_name(name).ok_or_else(unknown)?),
        },
    };
    Ok(Arc::new(rpo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::enumerate::find_group_isomorphism;

    #[test]
    fn constructors_satisfy_group_laws() {
        for g in [dihedral(3), dihedral(4), dicyclic(2), dicyclic(3), symmetric(4), alternating(4)] {
            assert!(g.law_violation().is_none());
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = dicyclic(2);
        assert_eq!(q.elements().filter(|&a| q.element_order(a) == 2).count(), 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn catalog_counts_and_orders() {
        let counts: Vec<usize> = (1..=15).map(|n| groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]);
        for n in 1..=15 {
            for e in groups_of_order(n) {
                assert_eq!(e.group.order(), n, "{}", e.name);
                assert!(e.group.law_violation().is_none(), "{}", e.name);
            }
        }
    }

    #[test]
    fn catalog_is_pairwise_non_isomorphic() {
        for n in 1..=15 {
            let gs = groups_of_order(n);
            for i in 0..gs.len() {
                for j in i + 1..gs.len() {
                    assert!(
                        find_group_isomorphism(&gs[i].group, &gs[j].group).is_none(),
                        "{} ≅ {}",
                        gs[i].name,
                        gs[j].name
                    );
                }
            }
        }
    }

    #[test]
    fn s4_labels_and_indices() {
        let g = symmetric(4);
        assert_eq!(g.label(0), "Id");
        let i = symmetric_index("(12)(34)", 4).unwrap();
        assert_eq!(g.label(i), "(12)(34)");
        assert_eq!(g.element_order(i), 2);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(group_by_name("C2xC2").unwrap().order(), 4);
        assert_eq!(group_by_name("S3").unwrap().order(), 6);
        assert!(group_by_name("Z7").is_none());
        assert_eq!(rpo_by_name("S4_A4").unwrap().cone().len(), 12);
        assert_eq!(rpo_by_name("C3_full").unwrap().cone().len(), 3);
        assert!(matches!(rpo_by_name("nope"), Err(Error::UnknownName(_))));
    }
}

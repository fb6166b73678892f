//! Permutations on `{1..k}` in cycle notation.

use crate::error::{Error, Result};

/// A permutation of `0..k`, stored as its image array.
/// Composition is right-to-left: `compose(a, b)(i) = a[b[i]]`.
pub type Perm = Vec<usize>;

pub fn identity(k: usize) -> Perm {
    (0..k).collect()
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn is_permutation(a: &[usize]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter().all(|&j| j < a.len() && !std::mem::replace(&mut seen[j], true))
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_even(a: &[usize]) -> bool {
    let mut seen = vec![false; a.len()];
    let mut transpositions = 0;
    for start in 0..a.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// All permutations of `0..k` in lexicographic order of image arrays
/// (the identity comes first).
pub fn all(k: usize) -> Vec<Perm> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Cycle notation with 1-based symbols, e.g. `(12)(34)`; the identity is `Id`.
/// Symbols above 9 are comma-separated.
pub fn to_cycles(a: &[usize]) -> String {
    let wide = a.len() > 9;
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = a[i];
        }
        out.push('(');
        out.push_str(&cycle.join(if wide { "," } else { "" }));
        out.push(')');
    }
    if out.is_empty() {
        "Id".to_string()
    } else {
        out
    }
}

fn parse_cycle_list(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s == "Id" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle string `{s}`")))?;
        let end = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
        let inner = &body[..end];
        let symbols: Vec<usize> = if inner.contains(',') {
            inner
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad symbol in `{s}`: {e}")))?
        } else {
            inner
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad symbol `{c}` in `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        if symbols.contains(&0) {
            return Err(Error::Parse(format!("symbols are 1-based in `{s}`")));
        }
        cycles.push(symbols.into_iter().map(|v| v - 1).collect());
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses a product of cycles, composed right-to-left, on `k` points.
pub fn parse_cycles(s: &str, k: usize) -> Result<Perm> {
    let mut acc = identity(k);
    for cycle in parse_cycle_list(s)?.into_iter().rev() {
        let mut c = identity(k);
        for (i, &v) in cycle.iter().enumerate() {
            if v >= k {
                return Err(Error::Parse(format!("symbol {} exceeds {k} in `{s}`", v + 1)));
            }
            c[v] = cycle[(i + 1) % cycle.len()];
        }
        acc = compose(&c, &acc);
    }
    Ok(acc)
}

/// Rewrites every symbol `s` of a cycle string as `x(s)`. The result denotes
/// the conjugate `x ∘ p ∘ x⁻¹` of the permutation `p` written in `cycles`.
pub fn relabel_cycles(cycles: &str, x: &[usize]) -> Result<String> {
    let list = parse_cycle_list(cycles)?;
    if list.is_empty() {
        return Ok("Id".into());
    }
    let wide = x.len() > 9;
    Ok(list
        .iter()
        .map(|c| {
            let syms: Vec<String> = c.iter().map(|&v| (x[v] + 1).to_string()).collect();
            format!("({})", syms.join(if wide { "," } else { "" }))
        })
        .collect())
}

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::symbolic::element::SymbolicElement as E;
use crate::symbolic::rpo::{SampleConfig, SymbolicMorphism, SymbolicRpoGroup};

/// A split epimorphism `d: total -> base` with section `e`.
#[derive(Clone, Debug)]
pub struct SymbolicPoint {
    pub total: Arc<SymbolicRpoGroup>,
    pub base: Arc<SymbolicRpoGroup>,
    pub d: SymbolicMorphism,
    pub e: SymbolicMorphism,
}

/// A reflexive graph `d, c: apex -> base`, `e: base -> apex`.
#[derive(Clone, Debug)]
pub struct SymbolicGraph {
    pub name: String,
    pub apex: Arc<SymbolicRpoGroup>,
    pub base: Arc<SymbolicRpoGroup>,
    pub d: SymbolicMorphism,
    pub c: SymbolicMorphism,
    pub e: SymbolicMorphism,
}

impl SymbolicGraph {
    pub fn point(&self) -> SymbolicPoint {
        SymbolicPoint {
            total: self.apex.clone(),
            base: self.base.clone(),
            d: self.d.clone(),
            e: self.e.clone(),
        }
    }

    /// The only possible composition: `m(a,b) = b - e(c(b)) + a`, defined
    /// when `d(a) = c(b)`.
    pub fn m(&self, a: &E, b: &E) -> E {
        let g = &self.apex.group;
        g.op(&g.sub(b, &self.e.apply(&self.c.apply(b))), a)
    }

    /// `σ(a) = e(c(a)) - a + e(d(a))`.
    pub fn sigma(&self, a: &E) -> E {
        let g = &self.apex.group;
        let ec = self.e.apply(&self.c.apply(a));
        let ed = self.e.apply(&self.d.apply(a));
        g.op(&g.sub(&ec, a), &ed)
    }

    /// Composable pairs `(a,b)` with `d(a) = c(b)` built from samples:
    /// each `(s, b)` gives `a = s - e(d(s)) + e(c(b))`.
    pub fn composable_pairs(&self, cfg: &SampleConfig) -> Result<Vec<(E, E)>> {
        let g = &self.apex.group;
        let xs = self.apex.samples(cfg)?;
        let mut rng = cfg.rng(4);
        Ok(crate::symbolic::rpo::sample_pairs(xs.len(), 12, cfg.samples, &mut rng)
            .into_iter()
            .map(|(i, j)| {
                let (s, b) = (&xs[i], &xs[j]);
                let k = g.sub(s, &self.e.apply(&self.d.apply(s)));
                (g.op(&k, &self.e.apply(&self.c.apply(b))), b.clone())
            })
            .collect())
    }

    /// Composable pairs of positive sampled elements, in stream order.
    pub fn positive_composable_pairs(&self, cfg: &SampleConfig) -> Result<Vec<(E, E)>> {
        let pos = self.apex.positive_samples(cfg)?;
        let mut by_c: HashMap<E, Vec<&E>> = HashMap::new();
        for b in &pos {
            by_c.entry(self.c.apply(b)).or_default().push(b);
        }
        let mut out = Vec::new();
        for a in &pos {
            if let Some(bs) = by_c.get(&self.d.apply(a)) {
                out.extend(bs.iter().take(64).map(|b| (a.clone(), (*b).clone())));
            }
        }
        Ok(out)
    }
}

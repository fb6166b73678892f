//! Boolean outcomes bundled with concrete witnesses.

use serde::{Deserialize, Serialize};
use std::fmt;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Every relevant tuple of a finite structure was evaluated.
    #[default]
    Exhaustive,
    /// A deterministic sample plus registered boundary elements was evaluated.
    /// A failing sampled verdict is still a genuine counterexample.
    Sampled,
}

/// A named element value inside a witness, e.g. `x = (13)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub name: String,
    pub value: String,
}

/// Concrete elements demonstrating a violation (or a realization) of a law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Short name of the law that was checked, e.g. `associativity`.
    pub law: String,
    pub bindings: Vec<Binding>,
    /// Optional rendered equation, e.g. `(3,2)-(0,2)=(3,1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

impl Witness {
    pub fn new(law: impl Into<String>) -> Self {
        Witness {
            law: law.into(),
            bindings: Vec::new(),
            expr: None,
        }
    }

    pub fn bind(mut self, name: impl Into<String>, value: impl ToString) -> Self {
        self.bindings.push(Binding {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn with_expr(mut self, expr: impl Into<String>) -> Self {
        self.expr = Some(expr.into());
        self
    }

    /// Value bound to `name`, if any.
    pub fn get(&self, name: &str) -> Option<&str> {
        self.bindings
            .iter()
            .find(|b| b.name == name)
            .map(|b| b.value.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(expr) = &self.expr {
            return f.write_str(expr);
        }
        write!(f, "{}:", self.law)?;
        for (i, b) in self.bindings.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}={}", b.name, b.value)?;
        }
        Ok(())
    }
}

/// Outcome of a check. When `holds` is false a witness is always present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default)]
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            basis: Basis::Exhaustive,
            witness: None,
        }
    }

    /// A passing verdict that carries a realizing witness.
    pub fn pass_with(witness: Witness) -> Self {
        Verdict {
            holds: true,
            basis: Basis::Exhaustive,
            witness: Some(witness),
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            basis: Basis::Exhaustive,
            witness: Some(witness),
        }
    }

    pub fn sampled(mut self) -> Self {
        self.basis = Basis::Sampled;
        self
    }

    /// Combine checks in order: the first failure wins.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.holds {
            let v = next();
            if v.holds {
                // keep the weaker epistemic basis
                let basis = if self.basis == Basis::Sampled || v.basis == Basis::Sampled {
                    Basis::Sampled
                } else {
                    Basis::Exhaustive
                };
                Verdict { basis, ..v }
            } else {
                v
            }
        } else {
            self
        }
    }

    pub fn witness_law(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.law.as_str())
    }
}

impl From<Option<Witness>> for Verdict {
    /// `None` means no violation was found.
    fn from(violation: Option<Witness>) -> Self {
        match violation {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(w),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.holds, &self.witness) {
            (true, _) if self.basis == Basis::Sampled => f.write_str("YES (sampled)"),
            (true, _) => f.write_str("YES"),
            (false, Some(w)) => write!(f, "NO (witness {w})"),
            (false, None) => f.write_str("NO"),
        }
    }
}

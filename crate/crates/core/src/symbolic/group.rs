use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::symbolic::element::{parse_raw_json, parse_raw_str, RawValue, SymbolicElement as E};

/// Carrier and group law of a symbolic group. Multiplicative groups are
/// written additively: `op` on ℚ* is multiplication.
///
/// Operations assume their arguments lie in the carrier (see
/// [`SymbolicGroup::contains`]) and panic otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymbolicGroup {
    /// (ℤ, +)
    Integers,
    /// (ℚ, +)
    Rationals,
    /// (ℚ*, ·)
    NonZeroRationals,
    /// ℚ⋊ℚ* with `(a,x)+(b,y) = (a+xb, xy)`.
    Affine,
    Product(Vec<SymbolicGroup>),
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicGroup::Integers => f.write_str("ℤ"),
            SymbolicGroup::Rationals => f.write_str("ℚ"),
            SymbolicGroup::NonZeroRationals => f.write_str("ℚ*"),
            SymbolicGroup::Affine => f.write_str("ℚ⋊ℚ*"),
            SymbolicGroup::Product(gs) => {
                let names: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                f.write_str(&names.join("×"))
            }
        }
    }
}

fn q(e: &E) -> &BigRational {
    match e {
        E::Rat(v) | E::NonZeroRat(v) => v,
        other => panic!("expected a rational, got {other}"),
    }
}

fn z(e: &E) -> &BigInt {
    e.as_int().unwrap_or_else(|| panic!("expected an integer, got {e}"))
}

impl SymbolicGroup {
    pub fn pair(a: SymbolicGroup, b: SymbolicGroup) -> Self {
        SymbolicGroup::Product(vec![a, b])
    }

    pub fn identity(&self) -> E {
        match self {
            SymbolicGroup::Integers => E::Int(BigInt::zero()),
            SymbolicGroup::Rationals => E::Rat(BigRational::zero()),
            SymbolicGroup::NonZeroRationals => E::NonZeroRat(BigRational::one()),
            SymbolicGroup::Affine => E::pair(E::Rat(BigRational::zero()), E::NonZeroRat(BigRational::one())),
            SymbolicGroup::Product(gs) => E::Tuple(gs.iter().map(|g| g.identity()).collect()),
        }
    }

    pub fn op(&self, a: &E, b: &E) -> E {
        match self {
            SymbolicGroup::Integers => E::Int(z(a) + z(b)),
            SymbolicGroup::Rationals => E::Rat(q(a) + q(b)),
            SymbolicGroup::NonZeroRationals => E::NonZeroRat(q(a) * q(b)),
            SymbolicGroup::Affine => {
                let (a0, x) = (q(a.at(0)), q(a.at(1)));
                let (b0, y) = (q(b.at(0)), q(b.at(1)));
                E::pair(E::Rat(a0 + x * b0), E::NonZeroRat(x * y))
            }
            SymbolicGroup::Product(gs) => E::Tuple(
                gs.iter()
                    .enumerate()
                    .map(|(i, g)| g.op(a.at(i), b.at(i)))
                    .collect(),
            ),
        }
    }

    pub fn neg(&self, a: &E) -> E {
        match self {
            SymbolicGroup::Integers => E::Int(-z(a)),
            SymbolicGroup::Rationals => E::Rat(-q(a)),
            SymbolicGroup::NonZeroRationals => E::NonZeroRat(q(a).recip()),
            SymbolicGroup::Affine => {
                let (a0, x) = (q(a.at(0)), q(a.at(1)));
                E::pair(E::Rat(-(a0 / x)), E::NonZeroRat(x.recip()))
            }
            SymbolicGroup::Product(gs) => {
                E::Tuple(gs.iter().enumerate().map(|(i, g)| g.neg(a.at(i))).collect())
            }
        }
    }

    /// `a - b`, i.e. `a + (-b)`.
    pub fn sub(&self, a: &E, b: &E) -> E {
        self.op(a, &self.neg(b))
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            SymbolicGroup::Affine => false,
            SymbolicGroup::Product(gs) => gs.iter().all(|g| g.is_abelian()),
            _ => true,
        }
    }

    pub fn contains(&self, e: &E) -> bool {
        match (self, e) {
            (SymbolicGroup::Integers, E::Int(_)) => true,
            (SymbolicGroup::Rationals, E::Rat(_)) => true,
            (SymbolicGroup::NonZeroRationals, E::NonZeroRat(v)) => !v.is_zero(),
            (SymbolicGroup::Affine, E::Tuple(v)) => {
                v.len() == 2
                    && SymbolicGroup::Rationals.contains(&v[0])
                    && SymbolicGroup::NonZeroRationals.contains(&v[1])
            }
            (SymbolicGroup::Product(gs), E::Tuple(v)) => {
                gs.len() == v.len() && gs.iter().zip(v).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    fn coerce_raw(&self, raw: &RawValue) -> Result<E> {
        let mismatch = || Error::Domain(format!("value does not belong to {self}"));
        match (self, raw) {
            (SymbolicGroup::Integers, RawValue::Scalar(v)) => {
                if v.is_integer() {
                    Ok(E::Int(v.to_integer()))
                } else {
                    Err(Error::Domain(format!("{v} is not an integer")))
                }
            }
            (SymbolicGroup::Rationals, RawValue::Scalar(v)) => Ok(E::Rat(v.clone())),
            (SymbolicGroup::NonZeroRationals, RawValue::Scalar(v)) => E::nonzero(v.clone()),
            (SymbolicGroup::Affine, RawValue::Tuple(v)) if v.len() == 2 => Ok(E::pair(
                SymbolicGroup::Rationals.coerce_raw(&v[0])?,
                SymbolicGroup::NonZeroRationals.coerce_raw(&v[1])?,
            )),
            (SymbolicGroup::Product(gs), RawValue::Tuple(v)) if v.len() == gs.len() => {
                gs.iter().zip(v).map(|(g, x)| g.coerce_raw(x)).collect::<Result<_>>().map(E::Tuple)
            }
            _ => Err(mismatch()),
        }
    }

    /// Reads an element from JSON: an integer, a `"p/q"` string, a
    /// `"(a,b)"` string, or an array of such.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<E> {
        self.coerce_raw(&parse_raw_json(v)?)
    }

    pub fn parse_element(&self, s: &str) -> Result<E> {
        self.coerce_raw(&parse_raw_str(s)?)
    }

    /// Small boundary points, identity first: `0, ±1, ±1/2, ±2` where they
    /// exist, and all combinations for products.
    pub fn boundary(&self) -> Vec<E> {
        let rats = |with_zero: bool| {
            let mut out = Vec::new();
            if with_zero {
                out.push(BigRational::zero());
            }
            for (n, d) in [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)] {
                out.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
            }
            out
        };
        match self {
            SymbolicGroup::Integers => [0, 1, -1, 2, -2].into_iter().map(E::int).collect(),
            SymbolicGroup::Rationals => rats(true).into_iter().map(E::Rat).collect(),
            SymbolicGroup::NonZeroRationals => rats(false).into_iter().map(E::NonZeroRat).collect(),
            SymbolicGroup::Affine => {
                SymbolicGroup::pair(SymbolicGroup::Rationals, SymbolicGroup::NonZeroRationals)
                    .boundary()
            }
            SymbolicGroup::Product(gs) => {
                let mut acc: Vec<Vec<E>> = vec![Vec::new()];
                for g in gs {
                    let pts = g.boundary();
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            pts.iter().map(move |p| {
                                let mut v = prefix.clone();
                                v.push(p.clone());
                                v
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(E::Tuple).collect()
            }
        }
    }

    /// A random element of height at most `height`. Half of the rational
    /// draws are integers, so that integer-valued cones are hit often.
    pub fn sample(&self, rng: &mut impl Rng, height: i64) -> E {
        let h = height.max(1);
        let rational = |rng: &mut dyn rand::RngCore, nonzero: bool| loop {
            let n = rng.random_range(-h..=h);
            if nonzero && n == 0 {
                continue;
            }
            let d = if rng.random_bool(0.5) { 1 } else { rng.random_range(1..=h) };
            break BigRational::new(n.into(), d.into());
        };
        match self {
            SymbolicGroup::Integers => E::int(rng.random_range(-h..=h)),
            SymbolicGroup::Rationals => E::Rat(rational(rng, false)),
            SymbolicGroup::NonZeroRationals => E::NonZeroRat(rational(rng, true)),
            SymbolicGroup::Affine => E::pair(E::Rat(rational(rng, false)), E::NonZeroRat(rational(rng, true))),
            SymbolicGroup::Product(gs) => E::Tuple(gs.iter().map(|g| g.sample(rng, height)).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const GROUPS: [fn() -> SymbolicGroup; 5] = [
        || SymbolicGroup::Integers,
        || SymbolicGroup::Rationals,
        || SymbolicGroup::NonZeroRationals,
        || SymbolicGroup::Affine,
        || SymbolicGroup::pair(SymbolicGroup::Integers, SymbolicGroup::NonZeroRationals),
    ];

    #[test]
    fn affine_law_and_inverse() {
        let g = SymbolicGroup::Affine;
        let a = g.parse_element("(3,2)").unwrap();
        let b = g.parse_element("(0,2)").unwrap();
        assert_eq!(g.sub(&a, &b).to_string(), "(3,1)");
        assert_eq!(g.neg(&b).to_string(), "(0,1/2)");
        assert!(!g.is_abelian());
    }

    #[test]
    fn coercion_respects_carriers() {
        assert!(SymbolicGroup::Integers.parse_element("1/2").is_err());
        assert!(matches!(SymbolicGroup::NonZeroRationals.parse_element("0"), Err(Error::Domain(_))));
        let g = SymbolicGroup::pair(SymbolicGroup::Integers, SymbolicGroup::Integers);
        assert!(g.element_from_json(&serde_json::json!([1, 2, 3])).is_err());
        assert_eq!(g.element_from_json(&serde_json::json!([1, "-2"])).unwrap().to_string(), "(1,-2)");
    }

    #[test]
    fn boundary_starts_at_identity() {
        for g in GROUPS.map(|f| f()) {
            assert_eq!(g.boundary()[0], g.identity(), "{g}");
        }
    }

    proptest! {
        #[test]
        fn sampled_elements_satisfy_group_laws(seed in any::<u64>(), which in 0usize..5) {
            let g = GROUPS[which]();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (g.sample(&mut rng, 10), g.sample(&mut rng, 10), g.sample(&mut rng, 10));
            prop_assert!(g.contains(&a));
            prop_assert_eq!(g.op(&g.op(&a, &b), &c), g.op(&a, &g.op(&b, &c)));
            prop_assert_eq!(g.op(&a, &g.neg(&a)), g.identity());
            prop_assert_eq!(g.op(&g.identity(), &a), a.clone());
        }
    }
}

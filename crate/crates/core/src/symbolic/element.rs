use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// An exact element of one of the symbolic carriers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SymbolicElement {
    Int(BigInt),
    Rat(BigRational),
    /// A rational known to be nonzero; build it with [`SymbolicElement::nonzero`].
    NonZeroRat(BigRational),
    Tuple(Vec<SymbolicElement>),
}

impl SymbolicElement {
    pub fn int(v: i64) -> Self {
        SymbolicElement::Int(BigInt::from(v))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        SymbolicElement::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn nonzero(q: BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("0 is not invertible in ℚ* (division by zero)".into()));
        }
        Ok(SymbolicElement::NonZeroRat(q))
    }

    /// `n/d` as an element of ℚ*. Panics if `n == 0`.
    pub fn nzr(n: i64, d: i64) -> Self {
        Self::nonzero(BigRational::new(n.into(), d.into())).expect("nonzero")
    }

    pub fn pair(a: SymbolicElement, b: SymbolicElement) -> Self {
        SymbolicElement::Tuple(vec![a, b])
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            SymbolicElement::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Rational value of a scalar element (integers included).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            SymbolicElement::Int(v) => Some(BigRational::from_integer(v.clone())),
            SymbolicElement::Rat(q) | SymbolicElement::NonZeroRat(q) => Some(q.clone()),
            SymbolicElement::Tuple(_) => None,
        }
    }

    pub fn components(&self) -> Option<&[SymbolicElement]> {
        match self {
            SymbolicElement::Tuple(v) => Some(v),
            _ => None,
        }
    }

    /// Component `i` of a tuple. Panics on scalars.
    pub fn at(&self, i: usize) -> &SymbolicElement {
        &self.components().expect("tuple element")[i]
    }
}

impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicElement::Int(v) => write!(f, "{v}"),
            SymbolicElement::Rat(q) | SymbolicElement::NonZeroRat(q) => write!(f, "{q}"),
            SymbolicElement::Tuple(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Raw parse result before coercion into a specific carrier.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum RawValue {
    Scalar(BigRational),
    Tuple(Vec<RawValue>),
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Domain(format!("division by zero in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `3`, `-1/2`, `(3,2)`, `(1,(2,3))`.
pub(crate) fn parse_raw_str(s: &str) -> Result<RawValue> {
    let s = s.trim();
    let Some(inner) = s.strip_prefix('(') else {
        return parse_rational(s).map(RawValue::Scalar);
    };
    let inner = inner
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{s}`")))?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(parse_raw_str(&inner[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
        }
    }
    parts.push(parse_raw_str(&inner[start..])?);
    Ok(RawValue::Tuple(parts))
}

pub(crate) fn parse_raw_json(v: &serde_json::Value) -> Result<RawValue> {
    use serde_json::Value;
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(RawValue::Scalar(BigRational::from_integer(i.into()))),
            None => Err(Error::Parse(format!("only integers and \"p/q\" strings are exact: {n}"))),
        },
        Value::String(s) => parse_raw_str(s),
        Value::Array(items) => items.iter().map(parse_raw_json).collect::<Result<_>>().map(RawValue::Tuple),
        other => Err(Error::Parse(format!("not an element: {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(SymbolicElement::rat(2, 4).to_string(), "1/2");
        assert_eq!(SymbolicElement::rat(-6, 3).to_string(), "-2");
        let p = SymbolicElement::pair(SymbolicElement::int(5), SymbolicElement::nzr(1, 2));
        assert_eq!(p.to_string(), "(5,1/2)");
    }

    #[test]
    fn nonzero_rejects_zero() {
        assert!(matches!(SymbolicElement::nonzero(BigRational::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn parses_nested_tuples() {
        let r = parse_raw_str("(1, (2,-3/6))").unwrap();
        let q = |n: i64, d: i64| RawValue::Scalar(BigRational::new(n.into(), d.into()));
        assert_eq!(r, RawValue::Tuple(vec![q(1, 1), RawValue::Tuple(vec![q(2, 1), q(-1, 2)])]));
        assert!(parse_raw_str("(1,2").is_err());
        assert!(matches!(parse_raw_str("1/0"), Err(Error::Domain(_))));
    }
}

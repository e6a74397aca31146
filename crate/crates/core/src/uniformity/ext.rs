use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A nonnegative rational or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(Rational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(Rational::zero())
    }

    pub fn finite(q: Rational) -> Result<Self> {
        if q.is_negative() {
            Err(Error::InvalidDistanceTable(format!("negative value {q}")))
        } else {
            Ok(ExtValue::Finite(q))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(q) if q.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(q) => Some(q),
            ExtValue::Infinite => None,
        }
    }

    /// `self ≤ q` for a finite rational `q`.
    pub fn at_most(&self, q: &Rational) -> bool {
        self.as_finite().is_some_and(|v| v <= q)
    }

    pub fn scale(&self, n: u64) -> ExtValue {
        match self {
            ExtValue::Finite(q) => ExtValue::Finite(q * Rational::from_integer(n.into())),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(ExtValue::Infinite),
            t => ExtValue::finite(rational::parse(t)?),
        }
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, o: &ExtValue) -> ExtValue {
        match (self, o) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, o: ExtValue) -> ExtValue {
        &self + &o
    }
}

impl std::iter::Sum for ExtValue {
    fn sum<I: Iterator<Item = ExtValue>>(iter: I) -> ExtValue {
        iter.fold(ExtValue::zero(), |a, b| a + b)
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
            (ExtValue::Finite(_), ExtValue::Infinite) => Ordering::Less,
            (ExtValue::Infinite, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Infinite, ExtValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(q) => write!(f, "{q}"),
            ExtValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExtValue::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn semiring_behaviour() {
        let a = ExtValue::Finite(ratio(1, 2));
        let b = ExtValue::Finite(ratio(1, 3));
        assert_eq!(&a + &b, ExtValue::Finite(ratio(5, 6)));
        assert_eq!(&a + &ExtValue::Infinite, ExtValue::Infinite);
        assert!(a < ExtValue::Infinite);
        assert!(b < a);
        assert!(ExtValue::finite(int(-1)).is_err());
        assert_eq!(ExtValue::parse("inf").unwrap(), ExtValue::Infinite);
        assert_eq!(ExtValue::parse("3/4").unwrap(), ExtValue::Finite(ratio(3, 4)));
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"1/2\"");
    }
}

//! Exact rationals and small helpers around them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace allowed).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn ceil_u64(q: &Rational) -> Option<u64> {
    let c = q.ceil().to_integer();
    if c.is_negative() {
        Some(0)
    } else {
        c.to_u64()
    }
}

pub fn floor_i64(q: &Rational) -> Option<i64> {
    q.floor().to_integer().to_i64()
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `2^-i` for `i = 0..=depth`; the default ε-grid.
pub fn dyadic_grid(depth: u32) -> Vec<Rational> {
    let two = int(2);
    let mut cur = Rational::one();
    let mut out = Vec::with_capacity(depth as usize + 1);
    for _ in 0..=depth {
        out.push(cur.clone());
        cur /= &two;
    }
    out
}

/// Distance from `q` to the nearest integer.
pub fn distance_to_integers(q: &Rational) -> Rational {
    let f = q.floor();
    let below = q - &f;
    let above = &f + Rational::one() - q;
    min(&below, &above)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one() || q.numer().is_multiple_of(q.denom())
}

pub mod serde_str {
    //! Serialize rationals as `"p/q"` strings.
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

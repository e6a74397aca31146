use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::RngCore;

use crate::convergence::{Bound, Constancy, NoFamily, OrderOracle};
use crate::error::Result;
use crate::lattice::{Lattice, LatticeGroup, Sample, TruncationPair};
use crate::rational::{self, Rational};
use crate::symbolic::Proof;

/// A finitely supported rational sequence indexed from 1. Zero entries are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct C00Vec(BTreeMap<u64, Rational>);

impl C00Vec {
    pub fn zero() -> Self {
        C00Vec(BTreeMap::new())
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        C00Vec(entries.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// `s · e_k`
    pub fn unit(k: u64, s: Rational) -> Self {
        Self::from_entries([(k, s)])
    }

    pub fn get(&self, i: u64) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest index in the support, `0` for the zero sequence.
    pub fn support_end(&self) -> u64 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.0.iter()
    }

    fn zip(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let keys: std::collections::BTreeSet<u64> = self.0.keys().chain(o.0.keys()).copied().collect();
        Self::from_entries(keys.into_iter().map(|i| (i, f(&self.get(i), &o.get(i)))))
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::from_entries(self.0.iter().map(|(&i, v)| (i, f(v))))
    }

    /// `Σ |x_i|`
    pub fn l1(&self) -> Rational {
        self.0.values().map(Signed::abs).sum()
    }
}

impl fmt::Display for C00Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<String> = self.0.iter().map(|(i, v)| format!("{v}·e{i}")).collect();
        write!(f, "{}", items.join(" + "))
    }
}

/// Closed-form sequences in `c₀₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C00Desc {
    Const(C00Vec),
    /// `scale · e_k`
    Unit {
        scale: Rational,
    },
    /// `f_{a,b}` applied termwise.
    Truncated {
        inner: Box<C00Desc>,
        a: C00Vec,
        b: C00Vec,
    },
}

/// Past index `end`, the `k`-th term equals `base + scale · e_k`.
struct TailForm {
    end: u64,
    base: C00Vec,
    scale: Rational,
}

/// Finitely supported rational sequences with coordinatewise operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct C00;

impl C00 {
    fn tail_form(&self, d: &C00Desc) -> TailForm {
        match d {
            C00Desc::Const(v) => TailForm { end: v.support_end(), base: v.clone(), scale: Rational::zero() },
            C00Desc::Unit { scale } => TailForm { end: 0, base: C00Vec::zero(), scale: scale.clone() },
            C00Desc::Truncated { inner, a, b } => {
                let t = self.tail_form(inner);
                let p = TruncationPair::new(self, a.clone(), b.clone());
                // coordinate k of the image is (scale ∧ 0) ∨ 0 = 0
                TailForm {
                    end: t.end.max(a.support_end()).max(b.support_end()),
                    base: p.f(self, &t.base),
                    scale: Rational::zero(),
                }
            }
        }
    }

    fn eval(&self, d: &C00Desc, k: u64) -> C00Vec {
        match d {
            C00Desc::Const(v) => v.clone(),
            C00Desc::Unit { scale } => C00Vec::unit(k, scale.clone()),
            C00Desc::Truncated { inner, a, b } => {
                TruncationPair::new(self, a.clone(), b.clone()).f(self, &self.eval(inner, k))
            }
        }
    }
}

impl Lattice for C00 {
    type Elem = C00Vec;

    fn name(&self) -> String {
        "c00".into()
    }

    fn meet(&self, x: &C00Vec, y: &C00Vec) -> C00Vec {
        x.zip(y, rational::min)
    }

    fn join(&self, x: &C00Vec, y: &C00Vec) -> C00Vec {
        x.zip(y, rational::max)
    }

    fn leq(&self, x: &C00Vec, y: &C00Vec) -> bool {
        x.zip(y, |a, b| if a <= b { Rational::zero() } else { a - b }).0.is_empty()
    }

    fn contains(&self, x: &C00Vec) -> bool {
        !x.0.contains_key(&0) && x.0.values().all(|v| !v.is_zero())
    }

    fn is_distributive(&self) -> bool {
        true
    }

    fn show(&self, x: &C00Vec) -> String {
        x.to_string()
    }
}

impl LatticeGroup for C00 {
    fn zero(&self) -> C00Vec {
        C00Vec::zero()
    }

    fn add(&self, x: &C00Vec, y: &C00Vec) -> C00Vec {
        x.zip(y, |a, b| a + b)
    }

    fn neg(&self, x: &C00Vec) -> C00Vec {
        x.map(|a| -a)
    }

    fn abs(&self, x: &C00Vec) -> C00Vec {
        x.map(Signed::abs)
    }
}

impl Sample for C00 {
    fn sample(&self, rng: &mut dyn RngCore) -> C00Vec {
        let len = rng.next_u32() % 5;
        C00Vec::from_entries((0..len).map(|_| {
            let i = u64::from(rng.next_u32() % 8) + 1;
            let v = rational::ratio((rng.next_u32() % 21) as i64 - 10, (rng.next_u32() % 4) as i64 + 1);
            (i, v)
        }))
    }
}

impl OrderOracle for C00 {
    type Desc = C00Desc;
    type Family = NoFamily;

    fn eval_desc(&self, d: &C00Desc, k: u64) -> Result<C00Vec> {
        Ok(self.eval(d, k))
    }

    fn const_desc(&self, x: &C00Vec) -> Option<C00Desc> {
        Some(C00Desc::Const(x.clone()))
    }

    fn shift_desc(&self, d: &C00Desc, by: i64) -> Option<C00Desc> {
        match d {
            C00Desc::Const(x) => Some(C00Desc::Const(x.clone())),
            C00Desc::Unit { .. } => None,
            C00Desc::Truncated { inner, a, b } => {
                Some(C00Desc::Truncated { inner: Box::new(self.shift_desc(inner, by)?), a: a.clone(), b: b.clone() })
            }
        }
    }

    fn prove_leq_from(&self, lo: &C00Desc, hi: &C00Desc, from: u64) -> Proof {
        let (l, h) = (self.tail_form(lo), self.tail_form(hi));
        let end = l.end.max(h.end);
        let start = from.max(1);
        if let Some(k) = (start..=end).find(|&k| !self.leq(&self.eval(lo, k), &self.eval(hi, k))) {
            return Proof::Refuted(k);
        }
        if self.leq(&l.base, &h.base) && l.scale <= h.scale {
            Proof::Proved
        } else {
            Proof::Refuted(start.max(end + 1))
        }
    }

    fn chain_sup(&self, d: &C00Desc, _from: u64) -> Bound<C00Vec> {
        let t = self.tail_form(d);
        if t.scale.is_zero() {
            Bound::Exact(t.base)
        } else {
            Bound::Unknown
        }
    }

    fn chain_inf(&self, d: &C00Desc, from: u64) -> Bound<C00Vec> {
        self.chain_sup(d, from)
    }

    fn eventual_constancy(&self, d: &C00Desc) -> Constancy<C00Vec> {
        let t = self.tail_form(d);
        if !t.scale.is_zero() {
            return Constancy::Never;
        }
        let mut from = t.end + 1;
        while from > 1 && self.eval(d, from - 1) == t.base {
            from -= 1;
        }
        Constancy::Constant { from, value: t.base }
    }

    fn truncated_tail(&self, d: &C00Desc, p: &TruncationPair<C00Vec>) -> Option<(u64, C00Desc)> {
        Some((1, C00Desc::Truncated { inner: Box::new(d.clone()), a: p.a.clone(), b: p.b.clone() }))
    }

    fn family_member(&self, fam: &NoFamily, _j: u64) -> C00Vec {
        match *fam {}
    }
}

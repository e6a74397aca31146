use std::fmt;

use num_traits::{Signed, Zero};
use rand::RngCore;

use crate::lattice::{Lattice, LatticeGroup, Sample};
use crate::rational::{self, Rational};
use crate::uniformity::ExtValue;

/// A rational sequence `(s_1, s_2, …)` that agrees with `c + d·i` for every
/// index `i` past its prefix. Values are kept canonical: the last prefix
/// entry never matches the linear part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvLinSeq {
    prefix: Vec<Rational>,
    c: Rational,
    d: Rational,
}

impl EvLinSeq {
    pub fn new(prefix: Vec<Rational>, c: Rational, d: Rational) -> Self {
        let mut s = EvLinSeq { prefix, c, d };
        s.canonicalize();
        s
    }

    /// `c + d·i` for every `i ≥ 1`.
    pub fn linear(c: Rational, d: Rational) -> Self {
        Self::new(Vec::new(), c, d)
    }

    /// `(1, 2, 3, …)`
    pub fn identity() -> Self {
        Self::linear(Rational::zero(), rational::int(1))
    }

    /// `(1, 1, 1, …)`
    pub fn ones() -> Self {
        Self::linear(rational::int(1), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::linear(Rational::zero(), Rational::zero())
    }

    /// A finitely supported sequence.
    pub fn finite(prefix: Vec<Rational>) -> Self {
        Self::new(prefix, Rational::zero(), Rational::zero())
    }

    fn linear_at(&self, i: usize) -> Rational {
        &self.c + &self.d * Rational::from_integer(i.into())
    }

    fn canonicalize(&mut self) {
        while let Some(last) = self.prefix.last() {
            if *last == self.linear_at(self.prefix.len()) {
                self.prefix.pop();
            } else {
                break;
            }
        }
    }

    /// The `i`-th coordinate, `i ≥ 1`.
    pub fn at(&self, i: usize) -> Rational {
        match i.checked_sub(1).and_then(|j| self.prefix.get(j)) {
            Some(v) => v.clone(),
            None => self.linear_at(i),
        }
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    /// `(c, d)` of the eventual part `c + d·i`.
    pub fn eventual(&self) -> (&Rational, &Rational) {
        (&self.c, &self.d)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.prefix.iter().map(|v| v * q).collect(), &self.c * q, &self.d * q)
    }

    fn pointwise(&self, o: &Self, len: usize, f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
        (1..=len).map(|i| f(&self.at(i), &o.at(i))).collect()
    }

    fn add_seq(&self, o: &Self) -> Self {
        let len = self.prefix.len().max(o.prefix.len());
        Self::new(self.pointwise(o, len, |a, b| a + b), &self.c + &o.c, &self.d + &o.d)
    }

    /// Pointwise max (`pick_max`) or min.
    fn extremum(&self, o: &Self, pick_max: bool) -> Self {
        let mut len = self.prefix.len().max(o.prefix.len());
        let (dc, dd) = (&self.c - &o.c, &self.d - &o.d);
        // past the crossing of the two linear parts the order is fixed
        if !dd.is_zero() {
            let crossing = -&dc / &dd;
            if let Some(f) = rational::floor_i64(&crossing) {
                len = len.max((f + 1).max(0) as usize);
            }
        }
        let self_wins = if dd.is_zero() { dc.is_positive() == pick_max } else { dd.is_positive() == pick_max };
        let (c, d) = if self_wins { (self.c.clone(), self.d.clone()) } else { (o.c.clone(), o.d.clone()) };
        let prefix = self.pointwise(o, len, |a, b| if (a >= b) == pick_max { a.clone() } else { b.clone() });
        Self::new(prefix, c, d)
    }

    /// Extended `ℓ¹` norm: `+∞` unless the eventual part vanishes.
    pub fn norm(&self) -> ExtValue {
        if self.c.is_zero() && self.d.is_zero() {
            ExtValue::Finite(self.prefix.iter().map(Signed::abs).sum())
        } else {
            ExtValue::Infinite
        }
    }
}

impl fmt::Display for EvLinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.prefix.iter().map(|v| v.to_string()).collect();
        write!(f, "({}; {} + {}·i)", items.join(", "), self.c, self.d)
    }
}

/// The space of eventually linear rational sequences.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvLin;

impl Lattice for EvLin {
    type Elem = EvLinSeq;

    fn name(&self) -> String {
        "evlin".into()
    }

    fn meet(&self, x: &EvLinSeq, y: &EvLinSeq) -> EvLinSeq {
        x.extremum(y, false)
    }

    fn join(&self, x: &EvLinSeq, y: &EvLinSeq) -> EvLinSeq {
        x.extremum(y, true)
    }

    fn leq(&self, x: &EvLinSeq, y: &EvLinSeq) -> bool {
        self.meet(x, y) == *x
    }

    fn is_distributive(&self) -> bool {
        true
    }

    fn show(&self, x: &EvLinSeq) -> String {
        x.to_string()
    }
}

impl LatticeGroup for EvLin {
    fn zero(&self) -> EvLinSeq {
        EvLinSeq::zero()
    }

    fn add(&self, x: &EvLinSeq, y: &EvLinSeq) -> EvLinSeq {
        x.add_seq(y)
    }

    fn neg(&self, x: &EvLinSeq) -> EvLinSeq {
        x.scale(&rational::int(-1))
    }
}

impl Sample for EvLin {
    fn sample(&self, rng: &mut dyn RngCore) -> EvLinSeq {
        let len = rng.next_u32() % 4;
        let mut small = || rational::ratio((rng.next_u32() % 13) as i64 - 6, (rng.next_u32() % 3) as i64 + 1);
        let prefix = (0..len).map(|_| small()).collect();
        EvLinSeq::new(prefix, small(), small())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_group_axioms_sampled, check_lattice_axioms_sampled};
    use crate::rational::{int, ratio};
    use rand::SeedableRng;

    #[test]
    fn identity_meets_three() {
        let m = EvLin.meet(&EvLinSeq::identity(), &EvLinSeq::ones().scale(&int(3)));
        assert_eq!(m.prefix(), &[int(1), int(2)]);
        assert_eq!(m.eventual(), (&int(3), &int(0)));
        for i in 1..20 {
            assert_eq!(m.at(i), int(i.min(3) as i64));
        }
    }

    #[test]
    fn norms() {
        assert_eq!(EvLinSeq::ones().scale(&ratio(1, 7)).norm(), ExtValue::Infinite);
        assert_eq!(EvLinSeq::finite(vec![int(1), int(-2)]).norm(), ExtValue::Finite(int(3)));
        let small = EvLinSeq::finite(vec![int(1)]);
        let big = EvLin.join(&small, &EvLinSeq::finite(vec![int(0), int(4)]));
        assert!(EvLin.leq(&small, &big));
        assert!(small.norm() <= big.norm());
    }

    #[test]
    fn pointwise_agreement() {
        let l = EvLin;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let (x, y) = (l.sample(&mut rng), l.sample(&mut rng));
            let (j, m, s) = (l.join(&x, &y), l.meet(&x, &y), l.add(&x, &y));
            for i in 1..40 {
                assert_eq!(j.at(i), rational::max(&x.at(i), &y.at(i)));
                assert_eq!(m.at(i), rational::min(&x.at(i), &y.at(i)));
                assert_eq!(s.at(i), x.at(i) + y.at(i));
            }
            assert_eq!(l.meet(&l.join(&x, &y), &y), l.meet(&y, &l.join(&x, &y)));
            assert_eq!(l.meet(&l.join(&x, &y), &y), y);
        }
        assert_eq!(check_lattice_axioms_sampled(&l, 1500, 21), None);
        assert_eq!(check_group_axioms_sampled(&l, 1500, 22), None);
    }
}

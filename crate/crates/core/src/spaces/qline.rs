use std::fmt;

use num_traits::{Signed, Zero};
use rand::RngCore;

use crate::convergence::{Bound, Constancy, NoFamily, OrderOracle};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeGroup, Sample, TruncationPair};
use crate::rational::{self, int, Rational};
use crate::symbolic::{self, Limit, Parity, Proof, Term};

fn sample_rational(rng: &mut dyn RngCore) -> Rational {
    let num = (rng.next_u32() % 49) as i64 - 24;
    let den = (rng.next_u32() % 6) as i64 + 1;
    rational::ratio(num, den)
}

fn term_leq_from(lo: &Term, hi: &Term, from: u64) -> Proof {
    symbolic::leq_from(lo, hi, from)
}

fn term_limit_bound(t: &Term) -> Bound<Rational> {
    match symbolic::limit(t) {
        Some(Limit::Finite(l)) => Bound::Exact(l),
        Some(_) => Bound::NoBound,
        None => Bound::Unknown,
    }
}

fn term_constancy(t: &Term) -> Constancy<Rational> {
    let mut values = Vec::with_capacity(2);
    for parity in Parity::BOTH {
        let Ok(f) = t.rat_fn(parity) else { return Constancy::Unknown };
        match symbolic::constant_value(&f) {
            Some(c) => values.push(c),
            None => return Constancy::Never,
        }
    }
    if values[0] == values[1] {
        Constancy::Constant { from: 1, value: values.swap_remove(0) }
    } else {
        Constancy::Never
    }
}

/// The rational line with its usual order and addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct QLine;

impl Lattice for QLine {
    type Elem = Rational;

    fn name(&self) -> String {
        "qline".into()
    }

    fn meet(&self, x: &Rational, y: &Rational) -> Rational {
        rational::min(x, y)
    }

    fn join(&self, x: &Rational, y: &Rational) -> Rational {
        rational::max(x, y)
    }

    fn leq(&self, x: &Rational, y: &Rational) -> bool {
        x <= y
    }

    fn is_distributive(&self) -> bool {
        true
    }

    fn show(&self, x: &Rational) -> String {
        x.to_string()
    }
}

impl LatticeGroup for QLine {
    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }

    fn neg(&self, x: &Rational) -> Rational {
        -x
    }

    fn abs(&self, x: &Rational) -> Rational {
        x.abs()
    }
}

impl Sample for QLine {
    fn sample(&self, rng: &mut dyn RngCore) -> Rational {
        sample_rational(rng)
    }
}

impl OrderOracle for QLine {
    type Desc = Term;
    type Family = NoFamily;

    fn eval_desc(&self, d: &Term, k: u64) -> Result<Rational> {
        d.eval(k)
    }

    fn const_desc(&self, x: &Rational) -> Option<Term> {
        Some(Term::constant(x.clone()))
    }

    fn shift_desc(&self, d: &Term, by: i64) -> Option<Term> {
        Some(d.shift(by))
    }

    fn prove_leq_from(&self, lo: &Term, hi: &Term, from: u64) -> Proof {
        term_leq_from(lo, hi, from)
    }

    fn chain_sup(&self, d: &Term, _from: u64) -> Bound<Rational> {
        term_limit_bound(d)
    }

    fn chain_inf(&self, d: &Term, _from: u64) -> Bound<Rational> {
        term_limit_bound(d)
    }

    fn eventual_constancy(&self, d: &Term) -> Constancy<Rational> {
        term_constancy(d)
    }

    fn truncated_tail(&self, d: &Term, p: &TruncationPair<Rational>) -> Option<(u64, Term)> {
        symbolic::clamp_tail(d, &p.a, &p.b)
    }

    fn family_member(&self, fam: &NoFamily, _j: u64) -> Rational {
        match *fam {}
    }
}

/// A vector of `ℚⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec(pub Vec<Rational>);

impl RatVec {
    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `Σ |x_i|`
    pub fn l1(&self) -> Rational {
        self.0.iter().map(Signed::abs).sum()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", items.join(", "))
    }
}

/// `ℚⁿ` with the coordinatewise order.
#[derive(Debug, Clone, Copy)]
pub struct QVec {
    dim: usize,
}

impl QVec {
    pub fn new(dim: usize) -> Self {
        QVec { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn zip(&self, x: &RatVec, y: &RatVec, f: impl Fn(&Rational, &Rational) -> Rational) -> RatVec {
        RatVec(x.0.iter().zip(&y.0).map(|(a, b)| f(a, b)).collect())
    }

    fn coords<T>(&self, d: &[Term], f: impl Fn(&Term) -> Option<T>) -> Option<Vec<T>> {
        (d.len() == self.dim).then(|| d.iter().map(f).collect::<Option<Vec<T>>>()).flatten()
    }
}

impl Lattice for QVec {
    type Elem = RatVec;

    fn name(&self) -> String {
        format!("qvec{}", self.dim)
    }

    fn meet(&self, x: &RatVec, y: &RatVec) -> RatVec {
        self.zip(x, y, rational::min)
    }

    fn join(&self, x: &RatVec, y: &RatVec) -> RatVec {
        self.zip(x, y, rational::max)
    }

    fn leq(&self, x: &RatVec, y: &RatVec) -> bool {
        x.0.iter().zip(&y.0).all(|(a, b)| a <= b)
    }

    fn contains(&self, x: &RatVec) -> bool {
        x.dim() == self.dim
    }

    fn is_distributive(&self) -> bool {
        true
    }

    fn show(&self, x: &RatVec) -> String {
        x.to_string()
    }
}

impl LatticeGroup for QVec {
    fn zero(&self) -> RatVec {
        RatVec(vec![Rational::zero(); self.dim])
    }

    fn add(&self, x: &RatVec, y: &RatVec) -> RatVec {
        self.zip(x, y, |a, b| a + b)
    }

    fn neg(&self, x: &RatVec) -> RatVec {
        RatVec(x.0.iter().map(|a| -a).collect())
    }

    fn abs(&self, x: &RatVec) -> RatVec {
        RatVec(x.0.iter().map(Signed::abs).collect())
    }
}

impl Sample for QVec {
    fn sample(&self, rng: &mut dyn RngCore) -> RatVec {
        RatVec((0..self.dim).map(|_| sample_rational(rng)).collect())
    }
}

impl OrderOracle for QVec {
    type Desc = Vec<Term>;
    type Family = NoFamily;

    fn eval_desc(&self, d: &Vec<Term>, k: u64) -> Result<RatVec> {
        if d.len() != self.dim {
            return Err(Error::ForeignElement { carrier: self.name(), element: format!("{} coordinates", d.len()) });
        }
        d.iter().map(|t| t.eval(k)).collect::<Result<Vec<_>>>().map(RatVec)
    }

    fn const_desc(&self, x: &RatVec) -> Option<Vec<Term>> {
        Some(x.0.iter().cloned().map(Term::constant).collect())
    }

    fn shift_desc(&self, d: &Vec<Term>, by: i64) -> Option<Vec<Term>> {
        Some(d.iter().map(|t| t.shift(by)).collect())
    }

    fn prove_leq_from(&self, lo: &Vec<Term>, hi: &Vec<Term>, from: u64) -> Proof {
        if lo.len() != self.dim || hi.len() != self.dim {
            return Proof::Unknown;
        }
        let mut out = Proof::Proved;
        for (l, h) in lo.iter().zip(hi) {
            out = match (out, term_leq_from(l, h, from)) {
                (Proof::Refuted(a), Proof::Refuted(b)) => Proof::Refuted(a.min(b)),
                (a, b) => a.and(b),
            };
        }
        out
    }

    fn chain_sup(&self, d: &Vec<Term>, _from: u64) -> Bound<RatVec> {
        let bounds = self.coords(d, |t| Some(term_limit_bound(t)));
        collect_bounds(bounds)
    }

    fn chain_inf(&self, d: &Vec<Term>, from: u64) -> Bound<RatVec> {
        self.chain_sup(d, from)
    }

    fn eventual_constancy(&self, d: &Vec<Term>) -> Constancy<RatVec> {
        let mut values = Vec::with_capacity(self.dim);
        for t in d {
            match term_constancy(t) {
                Constancy::Constant { value, .. } => values.push(value),
                Constancy::Never => return Constancy::Never,
                Constancy::Unknown => return Constancy::Unknown,
            }
        }
        Constancy::Constant { from: 1, value: RatVec(values) }
    }

    fn truncated_tail(&self, d: &Vec<Term>, p: &TruncationPair<RatVec>) -> Option<(u64, Vec<Term>)> {
        let parts = self.coords(d, |_| Some(()))?;
        let mut from = 1;
        let mut out = Vec::with_capacity(parts.len());
        for (i, t) in d.iter().enumerate() {
            let (f, c) = symbolic::clamp_tail(t, &p.a.0[i], &p.b.0[i])?;
            from = from.max(f);
            out.push(c);
        }
        Some((from, out))
    }

    fn family_member(&self, fam: &NoFamily, _j: u64) -> RatVec {
        match *fam {}
    }
}

fn collect_bounds(bounds: Option<Vec<Bound<Rational>>>) -> Bound<RatVec> {
    let Some(bounds) = bounds else { return Bound::Unknown };
    let mut out = Vec::with_capacity(bounds.len());
    for b in bounds {
        match b {
            Bound::Exact(v) => out.push(v),
            Bound::NoBound => return Bound::NoBound,
            Bound::Unknown => return Bound::Unknown,
        }
    }
    Bound::Exact(RatVec(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_group_axioms_sampled, check_lattice_axioms_sampled};
    use crate::rational::ratio;

    #[test]
    fn basic_operations() {
        let q2 = QVec::new(2);
        assert_eq!(q2.meet(&RatVec::from_ints(&[3, -1]), &RatVec::from_ints(&[1, 2])), RatVec::from_ints(&[1, -1]));
        let p = TruncationPair::new(&QLine, int(-1), int(1));
        assert_eq!(p.f(&QLine, &int(5)), int(1));
        assert_eq!(p.g(&QLine, &int(5)), int(1));
        assert_eq!(RatVec(vec![ratio(1, 2), int(-3)]).l1(), ratio(7, 2));
        assert!(!q2.contains(&RatVec::from_ints(&[1])));
    }

    #[test]
    fn axioms_hold_on_samples() {
        assert_eq!(check_lattice_axioms_sampled(&QLine, 3000, 1), None);
        assert_eq!(check_group_axioms_sampled(&QLine, 3000, 2), None);
        let q5 = QVec::new(5);
        assert_eq!(check_lattice_axioms_sampled(&q5, 2000, 3), None);
        assert_eq!(check_group_axioms_sampled(&q5, 2000, 4), None);
    }

    #[test]
    fn line_oracle() {
        let t = |s: &str| Term::parse(s).unwrap();
        assert_eq!(QLine.chain_sup(&t("-1/k"), 1), Bound::Exact(int(0)));
        assert_eq!(QLine.chain_sup(&t("k"), 1), Bound::NoBound);
        assert_eq!(QLine.eventual_constancy(&t("k/k + 2")), Constancy::Constant { from: 1, value: int(3) });
        assert_eq!(QLine.eventual_constancy(&t("(-1)^k")), Constancy::Never);
        assert_eq!(QLine.eventual_constancy(&t("1/k")), Constancy::Never);
        let p = TruncationPair::new(&QLine, int(0), int(1));
        let (from, c) = QLine.truncated_tail(&t("k"), &p).unwrap();
        assert_eq!((from, QLine.eventual_constancy(&c)), (1, Constancy::Constant { from: 1, value: int(1) }));
    }

    #[test]
    fn vector_oracle() {
        let q2 = QVec::new(2);
        let d = vec![Term::parse("1/k").unwrap(), Term::parse("2 - 1/k").unwrap()];
        assert_eq!(q2.chain_sup(&d, 1), Bound::Exact(RatVec::from_ints(&[0, 2])));
        let lo = q2.const_desc(&RatVec::from_ints(&[0, 1])).unwrap();
        assert_eq!(q2.prove_leq_from(&lo, &d, 1), Proof::Proved);
        assert_eq!(q2.eval_desc(&d, 2).unwrap(), RatVec(vec![ratio(1, 2), ratio(3, 2)]));
        assert!(q2.eval_desc(&vec![Term::index()], 1).is_err());
    }
}

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense univariate polynomial over ℚ, coefficients from low to high degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The index variable `k`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect();
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_u64(&self, k: u64) -> Rational {
        self.eval(&Rational::from_integer(k.into()))
    }

    /// `p(k + shift)`
    pub fn shift(&self, shift: &Rational) -> Poly {
        let lin = Poly::from_coeffs(vec![shift.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    /// `1 + max |a_i / a_n|`: every real root has absolute value below it.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.lead() else {
            return Rational::one();
        };
        let n = self.coeffs.len() - 1;
        let m = self.coeffs[..n].iter().map(|c| (c / lead).abs()).max().unwrap_or_else(Rational::zero);
        Rational::one() + m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    PosInf,
    NegInf,
}

/// `num / den` with a nonzero denominator polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Rational::one()) }
    }

    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        (!den.is_zero()).then_some(RatFn { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn { num: self.num.add(&o.num), den: self.den.clone() };
        }
        RatFn { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn recip(&self) -> Option<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn eval_u64(&self, k: u64) -> Option<Rational> {
        let d = self.den.eval_u64(k);
        (!d.is_zero()).then(|| self.num.eval_u64(k) / d)
    }

    pub fn limit(&self) -> Limit {
        let (Some(dn), Some(dd)) = (self.num.degree(), self.den.degree()) else {
            return Limit::Finite(Rational::zero());
        };
        let ratio = self.num.lead().unwrap() / self.den.lead().unwrap();
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Limit::Finite(Rational::zero()),
            std::cmp::Ordering::Equal => Limit::Finite(ratio),
            std::cmp::Ordering::Greater if ratio.is_positive() => Limit::PosInf,
            std::cmp::Ordering::Greater => Limit::NegInf,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn arithmetic_and_shift() {
        let k = Poly::var();
        let p = k.mul(&k).sub(&Poly::constant(int(1))); // k^2 - 1
        assert_eq!(p.eval_u64(3), int(8));
        let q = p.shift(&int(2)); // (k+2)^2 - 1
        assert_eq!(q.eval_u64(1), int(8));
        assert_eq!(q.degree(), Some(2));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        // (k - 3)(k - 7)
        let p = Poly::from_coeffs(vec![int(21), int(-10), int(1)]);
        assert!(p.cauchy_bound() > int(7));
        let f = RatFn::new(Poly::constant(int(1)), Poly::var()).unwrap();
        assert_eq!(f.eval_u64(4), Some(ratio(1, 4)));
        assert_eq!(f.limit(), Limit::Finite(int(0)));
    }
}

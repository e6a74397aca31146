use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::poly::{Poly, RatFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn of(k: u64) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn matches(self, k: u64) -> bool {
        Parity::of(k) == self
    }

    fn sign(self) -> Rational {
        match self {
            Parity::Even => Rational::one(),
            Parity::Odd => -Rational::one(),
        }
    }
}

/// A closed-form expression in the index `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(Rational),
    /// the index `k`
    Index,
    /// `(-1)^k`
    Alt,
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Recip(Box<Term>),
}

impl Term {
    pub fn constant(q: Rational) -> Term {
        Term::Const(q)
    }

    pub fn int(n: i64) -> Term {
        Term::Const(rational::int(n))
    }

    pub fn index() -> Term {
        Term::Index
    }

    pub fn add(a: Term, b: Term) -> Term {
        match (a, b) {
            (Term::Const(x), Term::Const(y)) => Term::Const(x + y),
            (Term::Const(x), t) | (t, Term::Const(x)) if x.is_zero() => t,
            (a, b) => Term::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        match (a, b) {
            (Term::Const(x), Term::Const(y)) => Term::Const(x * y),
            (Term::Const(x), t) | (t, Term::Const(x)) if x.is_one() => t,
            (a, b) => Term::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn neg(a: Term) -> Term {
        match a {
            Term::Const(x) => Term::Const(-x),
            Term::Neg(t) => *t,
            t => Term::Neg(Box::new(t)),
        }
    }

    /// Reciprocal; constant zero is rejected.
    pub fn recip(a: Term) -> Result<Term> {
        match a {
            Term::Const(x) if x.is_zero() => Err(Error::Term("division by zero".into())),
            Term::Const(x) => Ok(Term::Const(x.recip())),
            t => Ok(Term::Recip(Box::new(t))),
        }
    }

    pub fn div(a: Term, b: Term) -> Result<Term> {
        Ok(Term::mul(a, Term::recip(b)?))
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Term::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn from_poly(p: &Poly) -> Term {
        let mut acc = Term::int(0);
        for c in p.coeffs().iter().rev() {
            acc = Term::add(Term::mul(acc, Term::Index), Term::Const(c.clone()));
        }
        acc
    }

    pub fn from_rat_fn(f: &RatFn) -> Term {
        let num = Term::from_poly(f.num());
        match f.den().coeffs() {
            [c] => Term::mul(Term::Const(c.recip()), num),
            _ => Term::mul(num, Term::Recip(Box::new(Term::from_poly(f.den())))),
        }
    }

    /// The term equal to `even` on even `k` and `odd` on odd `k`.
    pub fn by_parity(even: &RatFn, odd: &RatFn) -> Term {
        let (e, o) = (Term::from_rat_fn(even), Term::from_rat_fn(odd));
        if e == o {
            return e;
        }
        let half = Term::Const(rational::ratio(1, 2));
        let on_even = Term::mul(half.clone(), Term::add(Term::int(1), Term::Alt));
        let on_odd = Term::mul(half, Term::sub(Term::int(1), Term::Alt));
        Term::add(Term::mul(on_even, e), Term::mul(on_odd, o))
    }

    /// Exact value at index `k`; errors on division by zero.
    pub fn eval(&self, k: u64) -> Result<Rational> {
        Ok(match self {
            Term::Const(q) => q.clone(),
            Term::Index => Rational::from_integer(k.into()),
            Term::Alt => Parity::of(k).sign(),
            Term::Add(a, b) => a.eval(k)? + b.eval(k)?,
            Term::Mul(a, b) => a.eval(k)? * b.eval(k)?,
            Term::Neg(a) => -a.eval(k)?,
            Term::Recip(a) => {
                let v = a.eval(k)?;
                if v.is_zero() {
                    return Err(Error::Term(format!("division by zero at k = {k}")));
                }
                v.recip()
            }
        })
    }

    /// The rational function this term equals on one parity class.
    pub fn rat_fn(&self, parity: Parity) -> Result<RatFn> {
        Ok(match self {
            Term::Const(q) => RatFn::poly(Poly::constant(q.clone())),
            Term::Index => RatFn::poly(Poly::var()),
            Term::Alt => RatFn::poly(Poly::constant(parity.sign())),
            Term::Add(a, b) => a.rat_fn(parity)?.add(&b.rat_fn(parity)?),
            Term::Mul(a, b) => a.rat_fn(parity)?.mul(&b.rat_fn(parity)?),
            Term::Neg(a) => a.rat_fn(parity)?.neg(),
            Term::Recip(a) => a
                .rat_fn(parity)?
                .recip()
                .ok_or_else(|| Error::Term(format!("reciprocal of a term vanishing on {parity:?} k")))?,
        })
    }

    /// The term `k ↦ t(k + offset)`.
    pub fn shift(&self, offset: i64) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Index => Term::add(Term::Index, Term::int(offset)),
            Term::Alt if offset % 2 == 0 => Term::Alt,
            Term::Alt => Term::neg(Term::Alt),
            Term::Add(a, b) => Term::add(a.shift(offset), b.shift(offset)),
            Term::Mul(a, b) => Term::mul(a.shift(offset), b.shift(offset)),
            Term::Neg(a) => Term::neg(a.shift(offset)),
            Term::Recip(a) => Term::Recip(Box::new(a.shift(offset))),
        }
    }

    /// Arguments of every reciprocal in the tree.
    pub fn reciprocal_arguments(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.collect_recips(&mut out);
        out
    }

    fn collect_recips<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_recips(out);
                b.collect_recips(out);
            }
            Term::Neg(a) => a.collect_recips(out),
            Term::Recip(a) => {
                out.push(a);
                a.collect_recips(out);
            }
            _ => {}
        }
    }

    pub fn parse(s: &str) -> Result<Term> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let t = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(..) => 1,
            Term::Mul(..) | Term::Recip(_) => 2,
            Term::Neg(_) => 3,
            Term::Const(q) if !rational::is_integer(q) || *q < Rational::zero() => 2,
            _ => 4,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, t: &Term, min: u8| {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            Term::Const(q) => write!(f, "{q}"),
            Term::Index => write!(f, "k"),
            Term::Alt => write!(f, "(-1)^k"),
            Term::Add(a, b) => {
                write!(f, "{a}")?;
                match &**b {
                    Term::Neg(inner) => {
                        write!(f, " - ")?;
                        wrap(f, inner, 2)
                    }
                    Term::Const(q) if *q < Rational::zero() => write!(f, " - {}", -q),
                    b => write!(f, " + {b}"),
                }
            }
            Term::Mul(a, b) => match &**b {
                Term::Recip(d) => {
                    wrap(f, a, 2)?;
                    write!(f, "/")?;
                    wrap(f, d, 4)
                }
                b => {
                    wrap(f, a, 2)?;
                    write!(f, "*")?;
                    wrap(f, b, 3)
                }
            },
            Term::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Term::Recip(a) => {
                write!(f, "1/")?;
                wrap(f, a, 4)
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Term, D::Error> {
        let s = String::deserialize(d)?;
        Term::parse(&s).map_err(serde::de::Error::custom)
    }
}

// expr  := unary (('+' | '-') unary')*   with term-level precedence below
// term  := unary (('*' | '/') unary)*
// unary := '-' unary | power
// power := atom ('^' index)?             (only (-1)^k and 1^k)
// atom  := integer | index | '(' expr ')'
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at column {} in `{}`", self.pos + 1, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Term::add(acc, self.term()?);
            } else if self.eat(b'-') {
                acc = Term::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = Term::mul(acc, self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = Term::div(acc, d).map_err(|_| self.error("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(b'-') {
            return Ok(Term::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if !self.index_symbol() {
            return Err(self.error("only powers with the index as exponent are supported"));
        }
        match base.as_const() {
            Some(q) if *q == -Rational::one() => Ok(Term::Alt),
            Some(q) if q.is_one() => Ok(Term::int(1)),
            _ => Err(self.error("only (-1)^k is supported")),
        }
    }

    fn index_symbol(&mut self) -> bool {
        match self.peek() {
            Some(b'k' | b'j' | b'n') => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Term> {
        if self.eat(b'(') {
            let t = self.expr()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(t);
        }
        if self.index_symbol() {
            return Ok(Term::Index);
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number, `k` or `(`"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(Term::Const(rational::parse(digits)?))
    }
}

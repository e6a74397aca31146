//! Closed-form index terms and exact tail reasoning.
//!
//! A [`Term`] is built from rational constants, the index `k`, `(-1)^k`,
//! `+`, `-`, `*` and reciprocals. On each parity class of `k` such a term is a
//! rational function of `k`, so questions like "is `t(k) ≥ 0` for every
//! `k ≥ K`" are decidable: past a Cauchy root bound the sign is that of the
//! leading coefficient, and below it there are finitely many integers to
//! evaluate.

mod poly;
mod term;

pub use poly::{Limit, Poly, RatFn};
pub use term::{Parity, Term};

use std::cmp::Ordering;

use num_traits::Zero;

use crate::rational::{ceil_u64, Rational};

/// Outcome of a symbolic decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proof {
    Proved,
    /// The claim fails at this index.
    Refuted(u64),
    Unknown,
}

impl Proof {
    pub fn is_proved(&self) -> bool {
        matches!(self, Proof::Proved)
    }

    /// Both must hold; the first refutation wins.
    pub fn and(self, other: Proof) -> Proof {
        match (self, other) {
            (Proof::Refuted(k), _) | (_, Proof::Refuted(k)) => Proof::Refuted(k),
            (Proof::Proved, Proof::Proved) => Proof::Proved,
            _ => Proof::Unknown,
        }
    }
}

/// Largest number of integers evaluated below a root bound before giving up.
pub const SCAN_BUDGET: u64 = 200_000;

fn first_index_with_parity(from: u64, parity: Parity) -> u64 {
    if parity.matches(from) {
        from
    } else {
        from + 1
    }
}

/// The integer beyond which the sign of `r` is that of its leading coefficient.
fn sign_threshold(r: &Poly) -> Option<u64> {
    ceil_u64(&r.cauchy_bound())
}

fn nonneg_on_class(f: &RatFn, parity: Parity, from: u64) -> Proof {
    let r = f.num().mul(f.den());
    let Some(lead) = r.lead() else {
        return Proof::Proved;
    };
    let Some(threshold) = sign_threshold(&r) else {
        return Proof::Unknown;
    };
    let start = first_index_with_parity(from.max(1), parity);
    let stop = threshold.max(start);
    if stop - start > 2 * SCAN_BUDGET {
        return Proof::Unknown;
    }
    let mut k = start;
    while k < stop {
        if r.eval_u64(k) < Rational::from_integer(0.into()) {
            return Proof::Refuted(k);
        }
        k += 2;
    }
    if *lead < Rational::from_integer(0.into()) {
        Proof::Refuted(first_index_with_parity(stop, parity))
    } else {
        Proof::Proved
    }
}

/// Eventual sign of `f` on one parity class: `(entry, sign)` such that
/// `sign(f(k)) = sign` for every `k ≥ entry` of that parity.
pub fn eventual_sign(f: &RatFn, parity: Parity) -> Option<(u64, Ordering)> {
    sign_entry(f, parity, false)
}

/// Like [`eventual_sign`], but zeros of `f` are allowed past the entry.
fn eventual_weak_sign(f: &RatFn, parity: Parity) -> Option<(u64, Ordering)> {
    sign_entry(f, parity, true)
}

fn sign_entry(f: &RatFn, parity: Parity, weak: bool) -> Option<(u64, Ordering)> {
    let r = f.num().mul(f.den());
    let zero = Rational::from_integer(0.into());
    let Some(lead) = r.lead() else {
        return Some((1, Ordering::Equal));
    };
    let sign = lead.cmp(&zero);
    let threshold = sign_threshold(&r)?;
    if threshold > 2 * SCAN_BUDGET {
        return None;
    }
    let mut entry = 1;
    let mut k = first_index_with_parity(1, parity);
    while k < threshold {
        let s = r.eval_u64(k).cmp(&zero);
        if s != sign && !(weak && s == Ordering::Equal) {
            entry = k + 1;
        }
        k += 2;
    }
    Some((entry, sign))
}

/// `(t ∧ hi) ∨ lo` as a closed-form term valid for every `k ≥` the returned
/// index.
pub fn clamp_tail(t: &Term, lo: &Rational, hi: &Rational) -> Option<(u64, Term)> {
    let mut entry = 1;
    let mut parts = Vec::with_capacity(2);
    for parity in Parity::BOTH {
        let f = t.rat_fn(parity).ok()?;
        let (e_hi, s_hi) = eventual_weak_sign(&f.add(&RatFn::poly(Poly::constant(-hi.clone()))), parity)?;
        entry = entry.max(e_hi);
        let capped = if s_hi == Ordering::Greater { RatFn::poly(Poly::constant(hi.clone())) } else { f };
        let (e_lo, s_lo) = eventual_weak_sign(&capped.add(&RatFn::poly(Poly::constant(-lo.clone()))), parity)?;
        entry = entry.max(e_lo);
        parts.push(if s_lo == Ordering::Less { RatFn::poly(Poly::constant(lo.clone())) } else { capped });
    }
    let odd = parts.pop()?;
    let even = parts.pop()?;
    Some((entry, Term::by_parity(&even, &odd)))
}

/// The value of `f` when it is a constant function.
pub fn constant_value(f: &RatFn) -> Option<Rational> {
    let den = f.den();
    let at = (1..=den.coeffs().len() as u64 + 1).find(|&k| !den.eval_u64(k).is_zero())?;
    let c = f.eval_u64(at)?;
    f.num().sub(&den.mul(&Poly::constant(c.clone()))).is_zero().then_some(c)
}

/// Decides `t(k) ≥ 0` for every integer `k ≥ from` (and `k ≥ 1`).
pub fn nonneg_from(t: &Term, from: u64) -> Proof {
    let mut out = Proof::Proved;
    for parity in Parity::BOTH {
        let p = match t.rat_fn(parity) {
            Ok(f) => nonneg_on_class(&f, parity, from),
            Err(_) => Proof::Unknown,
        };
        out = match (out, p) {
            (Proof::Refuted(a), Proof::Refuted(b)) => Proof::Refuted(a.min(b)),
            (a, b) => a.and(b),
        };
    }
    out
}

/// Decides `lo(k) ≤ hi(k)` for every `k ≥ from`.
pub fn leq_from(lo: &Term, hi: &Term, from: u64) -> Proof {
    nonneg_from(&Term::sub(hi.clone(), lo.clone()), from)
}

/// Smallest `K ≥ 1` with `t(k) ≥ 0` for all `k ≥ K`, if the sign settles
/// non-negative and the scan fits the budget.
pub fn nonneg_entry(t: &Term) -> Option<u64> {
    let mut entry = 1;
    for parity in Parity::BOTH {
        let f = t.rat_fn(parity).ok()?;
        let r = f.num().mul(f.den());
        let Some(lead) = r.lead() else { continue };
        if *lead < Rational::from_integer(0.into()) {
            return None;
        }
        let threshold = sign_threshold(&r)?;
        if threshold > 2 * SCAN_BUDGET {
            return None;
        }
        let mut k = first_index_with_parity(1, parity);
        let mut class_entry = 1;
        while k < threshold {
            if r.eval_u64(k) < Rational::from_integer(0.into()) {
                class_entry = k + 1;
            }
            k += 2;
        }
        entry = entry.max(class_entry);
    }
    Some(entry)
}

/// Limit of `t(k)` as `k → ∞` when both parity classes agree.
pub fn limit(t: &Term) -> Option<Limit> {
    let even = t.rat_fn(Parity::Even).ok()?.limit();
    let odd = t.rat_fn(Parity::Odd).ok()?.limit();
    (even == odd).then_some(even)
}

/// Whether `t` is defined (no zero denominator) at every `k ≥ 1`.
pub fn is_total(t: &Term) -> bool {
    t.reciprocal_arguments().into_iter().all(|u| {
        Parity::BOTH.iter().all(|&parity| {
            let Ok(f) = u.rat_fn(parity) else { return false };
            let num = f.num();
            if num.is_zero() {
                return false;
            }
            let Some(threshold) = sign_threshold(num) else { return false };
            if threshold > 2 * SCAN_BUDGET {
                return false;
            }
            let mut k = first_index_with_parity(1, parity);
            while k <= threshold {
                if f.eval_u64(k).is_none_or(|v| v == Rational::from_integer(0.into())) {
                    return false;
                }
                k += 2;
            }
            true
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    #[test]
    fn decides_simple_tails() {
        assert_eq!(nonneg_from(&t("k - 3"), 3), Proof::Proved);
        assert_eq!(nonneg_from(&t("k - 3"), 1), Proof::Refuted(1));
        assert_eq!(nonneg_from(&t("1/k"), 1), Proof::Proved);
        assert_eq!(nonneg_from(&t("(-1)^k/k"), 1), Proof::Refuted(1));
        assert_eq!(nonneg_from(&t("(-1)^k/k + 1/k"), 1), Proof::Proved);
        assert_eq!(nonneg_from(&t("5 - k"), 1), Proof::Refuted(6));
        // k^2 - 10k + 21 = (k-3)(k-7) is negative strictly between 3 and 7
        assert_eq!(nonneg_from(&t("k*k - 10*k + 21"), 7), Proof::Proved);
        assert_eq!(nonneg_from(&t("k*k - 10*k + 21"), 2), Proof::Refuted(4));
    }

    #[test]
    fn entry_index_and_limits() {
        assert_eq!(nonneg_entry(&t("k - 5")), Some(5));
        assert_eq!(nonneg_entry(&t("k*k - 10*k + 21")), Some(7));
        assert_eq!(nonneg_entry(&t("-k")), None);
        assert_eq!(limit(&t("1 - 1/k")), Some(Limit::Finite(int(1))));
        assert_eq!(limit(&t("(-1)^k/k")), Some(Limit::Finite(int(0))));
        assert_eq!(limit(&t("(-1)^k")), None);
        assert_eq!(limit(&t("k")), Some(Limit::PosInf));
        assert_eq!(limit(&t("(2*k+1)/(4*k)")), Some(Limit::Finite(ratio(1, 2))));
    }

    #[test]
    fn clamps_tails() {
        let (from, c) = clamp_tail(&t("k"), &int(-1), &int(1)).unwrap();
        assert_eq!(from, 1);
        let (from, _) = clamp_tail(&t("k"), &int(-1), &int(3)).unwrap();
        assert_eq!(from, 3);
        assert_eq!(c.eval(50).unwrap(), int(1));
        let (from, c) = clamp_tail(&t("(-1)^k/k"), &int(0), &int(1)).unwrap();
        assert_eq!(from, 1);
        for k in 1..40 {
            let v = t("(-1)^k/k").eval(k).unwrap();
            let expect = if v < int(0) { int(0) } else { v };
            assert_eq!(c.eval(k).unwrap(), expect);
        }
        let (_, c) = clamp_tail(&t("1 - 1/k"), &int(0), &ratio(1, 2)).unwrap();
        assert_eq!(c.eval(9).unwrap(), ratio(1, 2));
    }

    #[test]
    fn totality() {
        assert!(is_total(&t("1/k")));
        assert!(!is_total(&t("1/(k-2)")));
        assert!(is_total(&t("1/(k+1/2)")));
        assert!(!is_total(&t("1/((-1)^k + 1)")));
    }
}

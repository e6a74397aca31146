use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{Lattice, LatticeGroup, TruncationPair};
use crate::rational::{self, int, Rational};
use crate::spaces::{EvLin, EvLinSeq};
use crate::uniformity::{real_entourage_contains, ExtValue};

use super::{Basis, Verdict, Witness};

/// Proof that `x_k = k` leaves the entourage `U_n` around `r` for good.
#[derive(Debug, Clone, Serialize)]
pub struct LineNonConvergence {
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    pub n: u64,
    /// `(k, r) ∉ U_n` for every `k ≥ from`.
    pub from: u64,
    /// `|k − r| ≥ from − |r|` on the tail.
    #[serde(with = "rational::serde_str")]
    pub distance_floor: Rational,
    pub verdict: Verdict,
}

/// Shows that `x_k = k` does not converge to `r` in the base `(U_n)`.
///
/// With `n = ⌊max(|r| + 1, 1)⌋ + 1` and `k ≥ n + 1`: `|k − r| ≥ k − |r| > 2`
/// rules out the distance clause, `r < n` the upper clause and `k > −n` the
/// lower clause.
pub fn ustar_nonconvergence_on_line(r: &Rational) -> LineNonConvergence {
    let reach = rational::max(&(r.abs() + int(1)), &int(1));
    let n = rational::floor_i64(&reach).expect("small rational") as u64 + 1;
    let from = n + 1;
    let nq = int(n as i64);
    let floor = int(from as i64) - r.abs();
    let far = floor > nq.recip();
    let below_upper = *r < nq;
    let above_lower = int(from as i64) > -nq.clone();
    let verdict = if far && below_upper && above_lower {
        // the clause analysis covers every k ≥ from; a direct scan guards the
        // implementation of the entourage
        match (from..from + 64).find(|&k| real_entourage_contains(n, &int(k as i64), r)) {
            None => Verdict::exact(Basis::Symbolic).with_note(format!("(k, {r}) ∉ U_{n} for every k ≥ {from}")),
            Some(k) => Verdict::falsified(Basis::Horizon, Witness::at(k, format!("(k, {r}) ∈ U_{n}"))),
        }
    } else {
        let detail = format!("clause analysis failed: far = {far}, r < n = {below_upper}, k > −n = {above_lower}");
        Verdict::falsified(Basis::Symbolic, Witness::at(from, detail))
    };
    LineNonConvergence { r: r.clone(), n, from, distance_floor: floor, verdict }
}

/// The separation between the truncation topology and the topology of
/// `|x_n − x| ∧ a` on the eventually-linear sequences.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub k: u64,
    pub n: u64,
    /// `‖f_{−a,a}(x_n) − f_{−a,a}(x)‖₁`
    pub truncated_difference: ExtValue,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    /// `‖|x_n − x| ∧ a‖₁`
    pub unclamped: ExtValue,
    /// Convergence through the truncations: difference `≤ k/n`.
    pub sigma: Verdict,
    /// Convergence of `|x_n − x| ∧ a` to 0 in norm.
    pub unbounded: Verdict,
}

/// `x = (1, 2, 3, …)`, `e = (1, 1, …)`, `x_n = x + e/n`, `a = k·e`.
pub fn unbounded_separation_example(k: u64, n: u64) -> Result<SeparationReport> {
    let l = EvLin;
    let x = EvLinSeq::identity();
    let e = EvLinSeq::ones();
    let xn = l.add(&x, &e.scale(&rational::ratio(1, n as i64)));
    let a = e.scale(&int(k as i64));
    let p = TruncationPair::canonical(&l, l.neg(&a), a.clone())?;
    let truncated_difference = l.sub(&p.f(&l, &xn), &p.f(&l, &x)).norm();
    let bound = rational::ratio(k as i64, n as i64);
    let unclamped = l.meet(&l.abs(&l.sub(&xn, &x)), &a).norm();
    let sigma = if truncated_difference.at_most(&bound) {
        Verdict::exact(Basis::Symbolic).with_note(format!("‖f(x_n) − f(x)‖ = {truncated_difference} ≤ {bound}"))
    } else {
        Verdict::falsified(Basis::Symbolic, Witness::pair(k, n, format!("{truncated_difference} > {bound}")))
    };
    let unbounded = match &unclamped {
        ExtValue::Infinite => Verdict::falsified(Basis::Symbolic, Witness::pair(k, n, "‖|x_n − x| ∧ a‖ = +∞")),
        ExtValue::Finite(v) if v.is_zero() => Verdict::exact(Basis::Symbolic),
        ExtValue::Finite(v) => Verdict::inconclusive(format!("‖|x_n − x| ∧ a‖ = {v}")),
    };
    Ok(SeparationReport { k, n, truncated_difference, bound, unclamped, sigma, unbounded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn line_nonconvergence() {
        let z = ustar_nonconvergence_on_line(&int(0));
        assert_eq!(z.n, 2);
        assert!(z.verdict.is_exact());
        let h = ustar_nonconvergence_on_line(&int(100));
        assert_eq!(h.n, 102);
        assert!(h.verdict.is_exact());
        let m = ustar_nonconvergence_on_line(&ratio(-7, 2));
        assert!(m.verdict.is_exact());
        for k in m.from..m.from + 200 {
            assert!(!real_entourage_contains(m.n, &int(k as i64), &m.r));
        }
    }

    #[test]
    fn separation() {
        let r = unbounded_separation_example(3, 200).unwrap();
        assert!(r.truncated_difference.at_most(&ratio(3, 200)));
        assert_eq!(r.truncated_difference, ExtValue::Finite(ratio(2, 200)));
        assert_eq!(r.unclamped, ExtValue::Infinite);
        assert!(r.sigma.is_exact());
        assert!(r.unbounded.is_falsified());
        let r = unbounded_separation_example(1, 1).unwrap();
        assert!(r.truncated_difference.at_most(&int(1)));
        assert_eq!(r.unclamped, ExtValue::Infinite);
        let r = unbounded_separation_example(50, 10_000).unwrap();
        assert!(r.truncated_difference.at_most(&ratio(1, 200)));
    }
}

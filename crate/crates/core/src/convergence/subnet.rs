use crate::error::{Error, Result};
use crate::lattice::{Lattice, TruncationPair};

use super::{Basis, O2Witness, OrderOracle, Sequence, Verdict, Witness, WitnessSide};

/// One element `λ_i` of the cofinal chain: the subnet index `φ(λ_i)` and,
/// per truncation `f`, the bounds `m_i ≤ f(x_{φ(λ_i)}) ≤ n_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubnetStep<E> {
    pub phi: u64,
    pub lower: Vec<E>,
    pub values: Vec<E>,
    pub upper: Vec<E>,
}

/// A finite prefix of the subnet built from O₂ witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct SubnetEnumeration<E> {
    pub steps: Vec<SubnetStep<E>>,
}

impl<E: Clone + PartialEq> SubnetEnumeration<E> {
    pub fn phi(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.phi).collect()
    }

    /// Checks every invariant on the enumerated prefix: `φ` strictly
    /// increasing (so it passes every index `≤` the prefix length), lower
    /// bounds increasing, upper bounds decreasing and the sandwich.
    pub fn check_invariants<L: Lattice<Elem = E>>(&self, l: &L) -> Verdict {
        for (i, s) in self.steps.iter().enumerate() {
            let step = i as u64 + 1;
            if s.phi < step {
                return Verdict::falsified(Basis::Exhaustive, Witness::at(step, format!("φ = {} < {step}", s.phi)));
            }
            for f in 0..s.values.len() {
                if !(l.leq(&s.lower[f], &s.values[f]) && l.leq(&s.values[f], &s.upper[f])) {
                    let detail = format!(
                        "truncation {f}: {} ≤ {} ≤ {} fails",
                        l.show(&s.lower[f]),
                        l.show(&s.values[f]),
                        l.show(&s.upper[f])
                    );
                    return Verdict::falsified(Basis::Exhaustive, Witness::at(step, detail));
                }
            }
            let Some(next) = self.steps.get(i + 1) else { continue };
            if next.phi <= s.phi {
                return Verdict::falsified(Basis::Exhaustive, Witness::pair(step, step + 1, "φ not increasing"));
            }
            for f in 0..s.values.len() {
                if !l.leq(&s.lower[f], &next.lower[f]) {
                    return Verdict::falsified(
                        Basis::Exhaustive,
                        Witness::pair(step, step + 1, format!("truncation {f}: lower bound decreases")),
                    );
                }
                if !l.leq(&next.upper[f], &s.upper[f]) {
                    return Verdict::falsified(
                        Basis::Exhaustive,
                        Witness::pair(step, step + 1, format!("truncation {f}: upper bound increases")),
                    );
                }
            }
        }
        Verdict::exact(Basis::Exhaustive).with_note(format!("{} steps", self.steps.len()))
    }
}

/// Enumerates `steps` elements of a cofinal chain in the index set of the
/// subnet: every witness chain advances one member per step, and the
/// original index is `γ_i = max(max_f K_f(i), γ_{i−1} + 1)`.
pub fn build_subnet<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    pairs: &[TruncationPair<L::Elem>],
    witnesses: &[O2Witness<L>],
    steps: u64,
) -> Result<SubnetEnumeration<L::Elem>> {
    if pairs.is_empty() {
        return Err(Error::Empty("truncation list"));
    }
    if pairs.len() != witnesses.len() {
        return Err(Error::Unsupported {
            carrier: l.name(),
            what: format!("{} truncations but {} witnesses", pairs.len(), witnesses.len()),
        });
    }
    let mut chains = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        match (&w.lower, &w.upper) {
            (WitnessSide::Chain(m), WitnessSide::Chain(n)) => chains.push((m, n, &w.eventual)),
            _ => {
                return Err(Error::Unsupported {
                    carrier: l.name(),
                    what: "subnets need enumerated witness chains".into(),
                })
            }
        }
    }
    let images: Vec<Sequence<L>> = pairs.iter().map(|p| seq.image(l, p)).collect();
    let mut out = Vec::with_capacity(steps as usize);
    let mut gamma = 0;
    for i in 1..=steps {
        gamma = chains.iter().map(|(_, _, e)| e.at(i)).max().unwrap_or(0).max(gamma + 1);
        let mut step = SubnetStep { phi: gamma, lower: Vec::new(), values: Vec::new(), upper: Vec::new() };
        for (f, (m, n, _)) in chains.iter().enumerate() {
            let (lo, v, hi) = (m.at(l, i)?, images[f].at(l, gamma)?, n.at(l, i)?);
            if !(l.leq(&lo, &v) && l.leq(&v, &hi)) {
                return Err(Error::WitnessContainment { truncation: f, step: i, index: gamma });
            }
            step.lower.push(lo);
            step.values.push(v);
            step.upper.push(hi);
        }
        out.push(step);
    }
    Ok(SubnetEnumeration { steps: out })
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{LatticeGroup, TruncationPair};
use crate::par::{self, Exec};
use crate::symbolic::Proof;

use super::{Basis, Bound, Constancy, OrderOracle, Sequence, Side, Verdict, Witness};

/// Indices scanned past the horizon when looking for a concrete change.
const SCAN_LIMIT: u64 = 1 << 20;

/// Monotone nets `y_k ≤ x_k ≤ z_k` from index `start` on.
pub struct O1Witness<L: OrderOracle> {
    pub lower: Sequence<L>,
    pub upper: Sequence<L>,
    pub start: u64,
}

impl<L: OrderOracle> Clone for O1Witness<L> {
    fn clone(&self) -> Self {
        O1Witness { lower: self.lower.clone(), upper: self.upper.clone(), start: self.start }
    }
}

impl<L: OrderOracle + 'static> O1Witness<L> {
    /// Both nets constant at `x` from `start` on.
    pub fn constant(l: &L, x: &L::Elem, start: u64) -> Self {
        O1Witness { lower: Sequence::constant(l, x), upper: Sequence::constant(l, x), start }
    }
}

/// One side of an O₂ witness: an enumerated chain or a carrier family.
pub enum WitnessSide<L: OrderOracle> {
    Chain(Sequence<L>),
    Family(L::Family),
}

impl<L: OrderOracle> Clone for WitnessSide<L> {
    fn clone(&self) -> Self {
        match self {
            WitnessSide::Chain(s) => WitnessSide::Chain(s.clone()),
            WitnessSide::Family(f) => WitnessSide::Family(f.clone()),
        }
    }
}

/// The index `K(j)` from which `x_k ∈ [m_j, n_j]`.
#[derive(Clone)]
pub enum Eventual {
    /// `K(j) = j + offset`
    Affine {
        offset: u64,
    },
    Fn(Arc<dyn Fn(u64) -> u64 + Send + Sync>),
}

impl Eventual {
    pub fn at(&self, j: u64) -> u64 {
        match self {
            Eventual::Affine { offset } => j + offset,
            Eventual::Fn(f) => f(j),
        }
    }
}

/// An increasing chain (or directed family) `M`, a decreasing chain (or
/// filtered family) `N` and the eventual index for chain members.
pub struct O2Witness<L: OrderOracle> {
    pub lower: WitnessSide<L>,
    pub upper: WitnessSide<L>,
    pub eventual: Eventual,
}

impl<L: OrderOracle> Clone for O2Witness<L> {
    fn clone(&self) -> Self {
        O2Witness { lower: self.lower.clone(), upper: self.upper.clone(), eventual: self.eventual.clone() }
    }
}

impl<L: OrderOracle + 'static> O2Witness<L> {
    pub fn chains(lower: Sequence<L>, upper: Sequence<L>, eventual: Eventual) -> Self {
        O2Witness { lower: WitnessSide::Chain(lower), upper: WitnessSide::Chain(upper), eventual }
    }

    /// `M` = range of the lower net, `N` = range of the upper net, both
    /// re-indexed to start at the witness start.
    pub fn from_o1(l: &L, w: &O1Witness<L>) -> Self {
        let by = w.start.max(1) - 1;
        O2Witness::chains(w.lower.shifted(l, by as i64), w.upper.shifted(l, by as i64), Eventual::Affine { offset: by })
    }
}

/// Running state of a multi-part check.
struct Tally {
    symbolic: bool,
    bounds_known: bool,
    falsified: Option<Verdict>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { symbolic: true, bounds_known: true, falsified: None, notes: Vec::new() }
    }

    fn done(&self) -> bool {
        self.falsified.is_some()
    }

    fn falsify(&mut self, basis: Basis, w: Witness) {
        if self.falsified.is_none() {
            self.falsified = Some(Verdict::falsified(basis, w));
        }
    }

    fn unknown(&mut self, note: String) {
        self.symbolic = false;
        self.notes.push(note);
    }

    /// `lo(k) ≤ hi(k)` for `from ≤ k`, checked up to `horizon` and
    /// symbolically when both sides have descriptors.
    fn leq<L: OrderOracle + 'static>(
        &mut self,
        l: &L,
        what: &str,
        lo: &Sequence<L>,
        hi: &Sequence<L>,
        from: u64,
        horizon: u64,
    ) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if let Some(k) = horizon_violation(l, lo, hi, from, horizon)? {
            let detail = violation_detail(l, what, lo, hi, k)?;
            self.falsify(Basis::Horizon, Witness::at(k, detail));
            return Ok(());
        }
        match symbolic_leq(l, lo, hi, from)? {
            Proof::Proved => {}
            Proof::Refuted(k) => {
                let (a, b) = (lo.at(l, k)?, hi.at(l, k)?);
                if l.leq(&a, &b) {
                    self.unknown(format!("{what}: symbolic refutation at {k} did not reproduce"));
                } else {
                    let detail = violation_detail(l, what, lo, hi, k)?;
                    self.falsify(Basis::Symbolic, Witness::at(k, detail));
                }
            }
            Proof::Unknown => self.unknown(format!("{what}: checked up to the horizon only")),
        }
        Ok(())
    }

    fn bound<L: OrderOracle>(&mut self, l: &L, what: &str, b: Bound<L::Elem>, x: &L::Elem) {
        if self.done() {
            return;
        }
        match b {
            Bound::Exact(v) if v == *x => {}
            Bound::Exact(v) => {
                self.falsify(Basis::Symbolic, Witness::note(format!("{what} is {} ≠ {}", l.show(&v), l.show(x))))
            }
            Bound::NoBound => {
                self.falsify(Basis::Symbolic, Witness::note(format!("{what} does not exist in {}", l.name())))
            }
            Bound::Unknown => {
                self.bounds_known = false;
                self.notes.push(format!("{what}: no bound oracle answer"));
            }
        }
    }

    fn proof(&mut self, what: &str, p: Proof) {
        if self.done() {
            return;
        }
        match p {
            Proof::Proved => {}
            Proof::Refuted(k) => self.falsify(Basis::Symbolic, Witness::at(k, format!("{what} fails at k = {k}"))),
            Proof::Unknown => self.unknown(format!("{what}: not decided")),
        }
    }

    fn finish(self, horizon: u64) -> Verdict {
        if let Some(v) = self.falsified {
            return v;
        }
        let note = self.notes.join("; ");
        if !self.bounds_known {
            Verdict::inconclusive(note).with_horizon(horizon)
        } else if self.symbolic {
            Verdict::exact(Basis::Symbolic).with_note(note)
        } else {
            Verdict::at_horizon(horizon).with_note(note)
        }
    }
}

fn violation_detail<L: OrderOracle + 'static>(
    l: &L,
    what: &str,
    lo: &Sequence<L>,
    hi: &Sequence<L>,
    k: u64,
) -> Result<String> {
    let (a, b) = (lo.at(l, k)?, hi.at(l, k)?);
    Ok(format!("{what} fails at k = {k}: {} ≰ {}", l.show(&a), l.show(&b)))
}

fn horizon_violation<L: OrderOracle + 'static>(
    l: &L,
    lo: &Sequence<L>,
    hi: &Sequence<L>,
    from: u64,
    horizon: u64,
) -> Result<Option<u64>> {
    let hit = par::find_first(Exec::default(), from.max(1)..horizon + 1, |k| match (lo.at(l, k), hi.at(l, k)) {
        (Ok(a), Ok(b)) => (!l.leq(&a, &b)).then_some(Ok(k)),
        (Err(e), _) | (_, Err(e)) => Some(Err(e)),
    });
    hit.transpose()
}

fn symbolic_leq<L: OrderOracle + 'static>(l: &L, lo: &Sequence<L>, hi: &Sequence<L>, from: u64) -> Result<Proof> {
    let (Some(a), Some(b)) = (lo.desc(), hi.desc()) else { return Ok(Proof::Unknown) };
    let from = from.max(1);
    let start = from.max(lo.desc_from()).max(hi.desc_from());
    for k in from..start {
        if !l.leq(&lo.at(l, k)?, &hi.at(l, k)?) {
            return Ok(Proof::Refuted(k));
        }
    }
    Ok(l.prove_leq_from(a, b, start))
}

fn chain_bound<L: OrderOracle + 'static>(l: &L, s: &Sequence<L>, from: u64, side: Side) -> Bound<L::Elem> {
    let Some(d) = s.desc() else { return Bound::Unknown };
    let from = from.max(s.desc_from());
    match side {
        Side::Lower => l.chain_sup(d, from),
        Side::Upper => l.chain_inf(d, from),
    }
}

fn check_carrier<L: OrderOracle>(l: &L, x: &L::Elem) -> Result<()> {
    l.check_member(x)
}

/// Checks `x_k → x` in the O₁ sense against an explicit witness.
pub fn verify_o1<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    w: &O1Witness<L>,
    horizon: u64,
) -> Result<Verdict> {
    check_carrier(l, x)?;
    let k0 = w.start.max(1);
    let mut t = Tally::new();
    t.leq(l, "lower net increasing", &w.lower, &w.lower.shifted(l, 1), k0, horizon)?;
    t.leq(l, "upper net decreasing", &w.upper.shifted(l, 1), &w.upper, k0, horizon)?;
    t.leq(l, "lower ≤ x_k", &w.lower, seq, k0, horizon)?;
    t.leq(l, "x_k ≤ upper", seq, &w.upper, k0, horizon)?;
    t.bound(l, "supremum of the lower net", chain_bound(l, &w.lower, k0, Side::Lower), x);
    t.bound(l, "infimum of the upper net", chain_bound(l, &w.upper, k0, Side::Upper), x);
    Ok(t.finish(horizon))
}

/// Largest enumerated `j` with `K(j) ≤ k`, for every `k ≤ horizon`.
fn entered_by(eventual: &Eventual, horizon: u64) -> Vec<Option<u64>> {
    let mut best = vec![None; horizon as usize + 1];
    for j in 1..=horizon {
        let kj = eventual.at(j);
        if kj <= horizon {
            let slot = &mut best[kj as usize];
            *slot = Some(slot.map_or(j, |b: u64| b.max(j)));
        }
    }
    let mut run = None;
    for slot in best.iter_mut() {
        run = run.max(*slot);
        *slot = run;
    }
    best
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Lower => "M",
        Side::Upper => "N",
    }
}

fn check_side<L: OrderOracle + 'static>(
    t: &mut Tally,
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    ws: &WitnessSide<L>,
    side: Side,
    eventual: &Eventual,
    horizon: u64,
) -> Result<()> {
    let name = side_name(side);
    match ws {
        WitnessSide::Chain(m) => {
            match side {
                Side::Lower => t.leq(l, "M increasing", m, &m.shifted(l, 1), 1, horizon)?,
                Side::Upper => t.leq(l, "N decreasing", &m.shifted(l, 1), m, 1, horizon)?,
            }
            let what = match side {
                Side::Lower => "supremum of M",
                Side::Upper => "infimum of N",
            };
            t.bound(l, what, chain_bound(l, m, 1, side), x);
            if t.done() {
                return Ok(());
            }
            // containment at the horizon, using the largest entered member
            let entered = entered_by(eventual, horizon);
            for k in 1..=horizon {
                let Some(j) = entered[k as usize] else { continue };
                let (mj, xk) = (m.at(l, j)?, seq.at(l, k)?);
                let ok = match side {
                    Side::Lower => l.leq(&mj, &xk),
                    Side::Upper => l.leq(&xk, &mj),
                };
                if !ok {
                    let detail =
                        format!("x_{k} = {} outside the {name}-bound {} of member {j}", l.show(&xk), l.show(&mj));
                    t.falsify(Basis::Horizon, Witness::pair(j, k, detail));
                    return Ok(());
                }
            }
            match eventual {
                Eventual::Affine { offset } => {
                    // for a monotone chain, containment for all j is
                    // containment of x_k against member k - offset
                    let member = m.shifted(l, -(*offset as i64));
                    let from = offset + 1;
                    match side {
                        Side::Lower => t.leq(l, "containment in M", &member, seq, from, 0)?,
                        Side::Upper => t.leq(l, "containment in N", seq, &member, from, 0)?,
                    }
                }
                Eventual::Fn(_) => t.unknown(format!("containment in {name}: checked up to the horizon only")),
            }
        }
        WitnessSide::Family(f) => {
            t.bound(
                l,
                &format!("{} of the {name}-family", if side == Side::Lower { "supremum" } else { "infimum" }),
                l.family_bound(f, side),
                x,
            );
            if t.done() {
                return Ok(());
            }
            match seq.desc() {
                Some(d) => {
                    t.proof(&format!("containment in the {name}-family"), l.prove_family_containment(d, f, side))
                }
                None => t.unknown(format!("containment in the {name}-family needs a descriptor")),
            }
            // spot check the first members against the sequence
            if let Some(d) = seq.desc() {
                for j in 1..=horizon.min(64) {
                    let member = l.family_member(f, j);
                    let Some(entry) = l.family_entry(d, &member, side) else { continue };
                    let k = entry.max(seq.desc_from());
                    let xk = seq.at(l, k)?;
                    let ok = match side {
                        Side::Lower => l.leq(&member, &xk),
                        Side::Upper => l.leq(&xk, &member),
                    };
                    if !ok {
                        let detail = format!("x_{k} = {} outside family member {}", l.show(&xk), l.show(&member));
                        t.falsify(Basis::Horizon, Witness::pair(j, k, detail));
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks `x_k → x` in the O₂ sense against an explicit witness.
pub fn verify_o2<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    w: &O2Witness<L>,
    horizon: u64,
) -> Result<Verdict> {
    check_carrier(l, x)?;
    let mut t = Tally::new();
    check_side(&mut t, l, seq, x, &w.lower, Side::Lower, &w.eventual, horizon)?;
    check_side(&mut t, l, seq, x, &w.upper, Side::Upper, &w.eventual, horizon)?;
    Ok(t.finish(horizon))
}

/// On carriers where O₁-convergence is eventual constancy, decides whether
/// `x_k` O₁-converges to `x`.
pub fn decide_o1_eventual_constancy<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    horizon: u64,
) -> Result<Verdict> {
    if !l.o1_is_eventual_constancy() {
        return Err(Error::Unsupported {
            carrier: l.name(),
            what: "O1-convergence is not eventual constancy here".into(),
        });
    }
    check_carrier(l, x)?;
    let constancy = match seq.desc() {
        Some(d) => l.eventual_constancy(d),
        None => Constancy::Unknown,
    };
    match constancy {
        Constancy::Constant { from, value } => {
            let from = from.max(seq.desc_from());
            if value == *x {
                Ok(Verdict::exact(Basis::Symbolic).with_note(format!("constant from k = {from}")))
            } else {
                let detail = format!("eventually constant at {} ≠ {}", l.show(&value), l.show(x));
                Ok(Verdict::falsified(Basis::Symbolic, Witness::at(from, detail)))
            }
        }
        Constancy::Never => {
            let start = horizon.max(seq.desc_from()).max(2);
            for k in start..start + SCAN_LIMIT {
                let (a, b) = (seq.at(l, k)?, seq.at(l, k + 1)?);
                if a != b {
                    let detail =
                        format!("never eventually constant; x_{k} = {} ≠ x_{} = {}", l.show(&a), k + 1, l.show(&b));
                    return Ok(Verdict::falsified(Basis::Symbolic, Witness::pair(k, k + 1, detail)));
                }
            }
            Ok(Verdict::inconclusive("no change of value found past the horizon"))
        }
        Constancy::Unknown => {
            let from = (horizon / 2).max(1);
            for k in from..=horizon {
                let v = seq.at(l, k)?;
                if v != *x {
                    let detail = format!("x_{k} = {} ≠ {} in the second half of the horizon", l.show(&v), l.show(x));
                    return Ok(Verdict::falsified(Basis::Horizon, Witness::at(k, detail)));
                }
            }
            Ok(Verdict::at_horizon(horizon).with_note(format!("constant on [{from}, {horizon}]")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    O1,
    O2,
}

/// A per-truncation witness for [`verify_uo`].
pub enum UoWitness<L: OrderOracle> {
    O1(O1Witness<L>),
    O2(O2Witness<L>),
}

impl<L: OrderOracle> Clone for UoWitness<L> {
    fn clone(&self) -> Self {
        match self {
            UoWitness::O1(w) => UoWitness::O1(w.clone()),
            UoWitness::O2(w) => UoWitness::O2(w.clone()),
        }
    }
}

fn verify_truncation<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    p: &TruncationPair<L::Elem>,
    mode: Mode,
    supplied: Option<&UoWitness<L>>,
    horizon: u64,
) -> Result<Verdict> {
    let image = seq.image(l, p);
    let target = p.f(l, x);
    let witness = match supplied {
        Some(w) => w.clone(),
        None => {
            let constancy = image.desc().map_or(Constancy::Unknown, |d| l.eventual_constancy(d));
            match constancy {
                Constancy::Constant { from, value } => {
                    let from = from.max(image.desc_from());
                    if value != target {
                        let detail = format!(
                            "f{}(x_k) = {} for k ≥ {from}, but f{}(x) = {}",
                            p.show(l),
                            l.show(&value),
                            p.show(l),
                            l.show(&target)
                        );
                        return Ok(Verdict::falsified(Basis::Symbolic, Witness::at(from, detail)));
                    }
                    UoWitness::O1(O1Witness::constant(l, &value, from))
                }
                _ => return Ok(Verdict::inconclusive(format!("no witness for truncation {}", p.show(l)))),
            }
        }
    };
    match (mode, witness) {
        (Mode::O1, UoWitness::O1(w)) => verify_o1(l, &image, &target, &w, horizon),
        (Mode::O2, UoWitness::O1(w)) => verify_o2(l, &image, &target, &O2Witness::from_o1(l, &w), horizon),
        (Mode::O2, UoWitness::O2(w)) => verify_o2(l, &image, &target, &w, horizon),
        (Mode::O1, UoWitness::O2(_)) => {
            Err(Error::Unsupported { carrier: l.name(), what: "an O2 witness cannot certify O1-convergence".into() })
        }
    }
}

/// Order convergence of every truncated image `f_p(x_k) → f_p(x)`.
///
/// `witnesses[i]` certifies truncation `i`; a missing witness is derived
/// from eventual constancy of the image when the carrier can decide it. The
/// result is the weakest per-truncation verdict.
pub fn verify_uo<L: OrderOracle + 'static>(
    l: &L,
    seq: &Sequence<L>,
    x: &L::Elem,
    pairs: &[TruncationPair<L::Elem>],
    mode: Mode,
    witnesses: &[Option<UoWitness<L>>],
    horizon: u64,
) -> Result<Verdict> {
    if pairs.is_empty() {
        return Err(Error::Empty("truncation list"));
    }
    check_carrier(l, x)?;
    let idx: Vec<usize> = (0..pairs.len()).collect();
    let verdicts = par::map_slice(Exec::default(), &idx, |&i| {
        let w = witnesses.get(i).and_then(Option::as_ref);
        verify_truncation(l, seq, x, &pairs[i], mode, w, horizon).map(|v| {
            let note =
                if v.note.is_empty() { format!("truncation {i}") } else { format!("truncation {i}: {}", v.note) };
            v.with_note(note)
        })
    });
    let verdicts = verdicts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Verdict::weakest_of(verdicts).expect("nonempty"))
}

/// The truncation pairs `(x − a, x)` and `(x, x + a)` for every positive `a`.
pub fn positive_pairs<G: LatticeGroup>(
    g: &G,
    x: &G::Elem,
    positives: &[G::Elem],
) -> Result<Vec<TruncationPair<G::Elem>>> {
    let mut out = Vec::with_capacity(2 * positives.len());
    for a in positives {
        if !g.is_positive(a) {
            return Err(Error::NotPositive(g.show(a)));
        }
        out.push(TruncationPair::new(g, g.sub(x, a), x.clone()));
        out.push(TruncationPair::new(g, x.clone(), g.add(x, a)));
    }
    Ok(out)
}

/// [`verify_uo`] with truncations generated by positive elements; witness
/// `2i` and `2i + 1` belong to the two pairs of `positives[i]`.
pub fn verify_uo_positives<G: LatticeGroup + OrderOracle + 'static>(
    g: &G,
    seq: &Sequence<G>,
    x: &G::Elem,
    positives: &[G::Elem],
    mode: Mode,
    witnesses: &[Option<UoWitness<G>>],
    horizon: u64,
) -> Result<Verdict> {
    let pairs = positive_pairs(g, x, positives)?;
    verify_uo(g, seq, x, &pairs, mode, witnesses, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::Status;
    use crate::rational::{int, ratio};
    use crate::spaces::{
        C00Desc, C00Vec, FinCof, FinCofDesc, FinCofFamily, FinCofSet, Periodic, QLine, TableLattice, C00,
    };
    use crate::symbolic::Term;

    fn q(s: &str) -> Sequence<QLine> {
        Sequence::described(Term::parse(s).unwrap())
    }

    #[test]
    fn o1_on_the_line() {
        let w = O1Witness { lower: q("-1/k"), upper: q("1/k"), start: 1 };
        let v = verify_o1(&QLine, &q("(-1)^k/k"), &int(0), &w, 2000).unwrap();
        assert!(v.accepts(), "{v:?}");
        assert_eq!(v.status, Status::Exact);

        let c = Sequence::constant(&QLine, &int(4));
        let v = verify_o1(&QLine, &c, &int(4), &O1Witness::constant(&QLine, &int(4), 1), 100).unwrap();
        assert!(v.is_exact());

        // wrong limit
        let v = verify_o1(&QLine, &q("(-1)^k/k"), &int(1), &w, 2000).unwrap();
        assert!(v.is_falsified());

        // closures only: bounds unknown
        let s = Sequence::<QLine>::from_fn("1/k", |k| ratio(1, k as i64));
        let lo = Sequence::<QLine>::from_fn("0", |_| int(0));
        let w = O1Witness { lower: lo, upper: s.clone(), start: 1 };
        assert_eq!(verify_o1(&QLine, &s, &int(0), &w, 500).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn o1_alternating_chain_fails() {
        let c3 = TableLattice::chain(3);
        let alt = Sequence::described(Periodic::new(vec![], vec![0, 2]).unwrap());
        for x in 0..3 {
            for lo in 0..3 {
                for hi in 0..3 {
                    let w = O1Witness {
                        lower: Sequence::constant(&c3, &lo),
                        upper: Sequence::constant(&c3, &hi),
                        start: 1,
                    };
                    let v = verify_o1(&c3, &alt, &x, &w, 20).unwrap();
                    assert!(v.is_falsified(), "{x} {lo} {hi}");
                    assert!(v.witness.is_some());
                }
            }
        }
        let v = decide_o1_eventual_constancy(&c3, &alt, &0, 20).unwrap();
        assert!(v.is_falsified());
    }

    #[test]
    fn o2_replays_o1() {
        let w = O1Witness { lower: q("-1/k"), upper: q("1/k"), start: 3 };
        let s = q("(-1)^k/k");
        assert!(verify_o1(&QLine, &s, &int(0), &w, 1000).unwrap().accepts());
        let v = verify_o2(&QLine, &s, &int(0), &O2Witness::from_o1(&QLine, &w), 1000).unwrap();
        assert!(v.is_exact(), "{v:?}");
    }

    #[test]
    fn o2_line_chains() {
        let w = O2Witness::chains(q("-1/k"), q("1/k"), Eventual::Affine { offset: 1 });
        let v = verify_o2(&QLine, &q("(-1)^k/k"), &int(0), &w, 2000).unwrap();
        assert!(v.is_exact(), "{v:?}");
        // a sequence escaping the interval
        let v = verify_o2(&QLine, &q("(-1)^k"), &int(0), &w, 100).unwrap();
        assert!(v.is_falsified());
        let idx = v.witness.unwrap().indices;
        assert_eq!(idx.len(), 2);
    }

    #[test]
    fn fincof_separation() {
        let a = Sequence::<FinCof>::described(FinCof::singletons());
        let empty = FinCofSet::empty();
        let w = O2Witness {
            lower: WitnessSide::Chain(Sequence::constant(&FinCof, &empty)),
            upper: WitnessSide::Family(FinCofFamily::AllCofinite),
            eventual: Eventual::Affine { offset: 0 },
        };
        let v = verify_o2(&FinCof, &a, &empty, &w, 200).unwrap();
        assert!(v.is_exact(), "{v:?}");
        let v = decide_o1_eventual_constancy(&FinCof, &a, &empty, 200).unwrap();
        assert!(v.is_falsified());
        assert_eq!(v.basis, Basis::Symbolic);

        // the chain X ∖ {x_1..x_j} has no infimum in the algebra
        let chain = O2Witness::chains(
            Sequence::constant(&FinCof, &empty),
            Sequence::described(FinCof::coprefix_chain()),
            Eventual::Affine { offset: 1 },
        );
        let v = verify_o2(&FinCof, &a, &empty, &chain, 200).unwrap();
        assert!(v.is_falsified());
        assert!(v.witness.unwrap().detail.contains("does not exist"));

        let settled = Sequence::<FinCof>::described(FinCofDesc::Const(FinCofSet::finite([3])));
        assert!(decide_o1_eventual_constancy(&FinCof, &settled, &FinCofSet::finite([3]), 10).unwrap().is_exact());
        assert!(decide_o1_eventual_constancy(&QLine, &q("1/k"), &int(0), 10).is_err());
    }

    #[test]
    fn periodic_on_four_elements() {
        let p2 = TableLattice::powerset(2);
        let s = Sequence::described(Periodic::new(vec![3, 3], vec![1, 2]).unwrap());
        assert!(decide_o1_eventual_constancy(&p2, &s, &1, 50).unwrap().is_falsified());
        let t = Sequence::described(Periodic::new(vec![3, 0], vec![1]).unwrap());
        assert!(decide_o1_eventual_constancy(&p2, &t, &1, 50).unwrap().is_exact());
    }

    #[test]
    fn uo_on_c00() {
        let units = Sequence::<C00>::described(C00Desc::Unit { scale: int(1) });
        let positives = vec![
            C00Vec::from_entries([(1, int(2)), (4, ratio(1, 3))]),
            C00Vec::from_entries([(7, int(5))]),
            C00Vec::zero(),
        ];
        for mode in [Mode::O1, Mode::O2] {
            let v = verify_uo_positives(&C00, &units, &C00Vec::zero(), &positives, mode, &[], 300).unwrap();
            assert!(v.is_exact(), "{v:?}");
        }
        let c = Sequence::constant(&C00, &C00Vec::unit(2, int(3)));
        let v = verify_uo_positives(&C00, &c, &C00Vec::unit(2, int(3)), &positives, Mode::O1, &[], 50).unwrap();
        assert!(v.is_exact());
        assert!(matches!(
            verify_uo_positives(&C00, &c, &C00Vec::zero(), &[C00Vec::unit(1, int(-1))], Mode::O1, &[], 5),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn uo_on_the_line() {
        let v = verify_uo_positives(&QLine, &q("k"), &int(0), &[int(1)], Mode::O1, &[], 100).unwrap();
        assert!(v.is_falsified());
        let pairs = positive_pairs(&QLine, &int(0), &[int(1)]).unwrap();
        let w = verify_uo(&QLine, &q("k"), &int(0), &pairs, Mode::O1, &[], 100).unwrap();
        assert_eq!(v.status, w.status);

        // images of (-1)^k/k need explicit witnesses: they are not eventually constant
        let s = q("(-1)^k/k");
        let v = verify_uo_positives(&QLine, &s, &int(0), &[int(1)], Mode::O1, &[], 100).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        let witnesses = vec![
            Some(UoWitness::O1(O1Witness { lower: q("-1/k"), upper: q("0"), start: 1 })),
            Some(UoWitness::O1(O1Witness { lower: q("0"), upper: q("1/k"), start: 1 })),
        ];
        let v = verify_uo_positives(&QLine, &s, &int(0), &[int(1)], Mode::O1, &witnesses, 500).unwrap();
        assert!(v.is_exact(), "{v:?}");
        assert!(verify_uo(&QLine, &s, &int(0), &[], Mode::O1, &[], 5).is_err());
    }

    #[test]
    fn eventual_entries() {
        let e = entered_by(&Eventual::Affine { offset: 2 }, 6);
        assert_eq!(e, vec![None, None, None, Some(1), Some(2), Some(3), Some(4)]);
        let f = entered_by(&Eventual::Fn(Arc::new(|j| if j == 1 { 5 } else { 2 })), 5);
        assert_eq!(f[2], Some(5));
        assert_eq!(f[1], None);
    }
}

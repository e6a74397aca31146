use std::collections::BTreeSet;
use std::fmt;

use crate::convergence::{Bound, Constancy, OrderOracle, Side};
use crate::error::Result;
use crate::lattice::{Lattice, TruncationPair};
use crate::symbolic::Proof;

/// Atom identifier. The sequence atoms are `x_k = k` for `k ≥ 1`; atom `0`
/// stands for the inexhaustible supply of atoms off the sequence.
pub type Atom = u64;

/// A finite subset of `X` (`cofinite = false`) or the complement of one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinCofSet {
    atoms: BTreeSet<Atom>,
    cofinite: bool,
}

impl FinCofSet {
    pub fn empty() -> Self {
        FinCofSet { atoms: BTreeSet::new(), cofinite: false }
    }

    pub fn full() -> Self {
        FinCofSet { atoms: BTreeSet::new(), cofinite: true }
    }

    pub fn finite(atoms: impl IntoIterator<Item = Atom>) -> Self {
        FinCofSet { atoms: atoms.into_iter().collect(), cofinite: false }
    }

    /// `X ∖ atoms`
    pub fn cofinite(atoms: impl IntoIterator<Item = Atom>) -> Self {
        FinCofSet { atoms: atoms.into_iter().collect(), cofinite: true }
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    /// The listed atoms: the set itself, or its complement when cofinite.
    pub fn listed(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.atoms.contains(&a) != self.cofinite
    }

    pub fn complement(&self) -> Self {
        FinCofSet { atoms: self.atoms.clone(), cofinite: !self.cofinite }
    }

    pub fn union(&self, o: &Self) -> Self {
        match (self.cofinite, o.cofinite) {
            (false, false) => FinCofSet::finite(self.atoms.union(&o.atoms).copied()),
            (true, true) => FinCofSet::cofinite(self.atoms.intersection(&o.atoms).copied()),
            (false, true) => FinCofSet::cofinite(o.atoms.difference(&self.atoms).copied()),
            (true, false) => o.union(self),
        }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        self.complement().union(&o.complement()).complement()
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        match (self.cofinite, o.cofinite) {
            (false, false) => self.atoms.is_subset(&o.atoms),
            (false, true) => self.atoms.is_disjoint(&o.atoms),
            (true, true) => o.atoms.is_subset(&self.atoms),
            (true, false) => false,
        }
    }
}

impl fmt::Display for FinCofSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.atoms.iter().map(|a| format!("x{a}")).collect();
        match (self.cofinite, items.is_empty()) {
            (false, true) => write!(f, "∅"),
            (true, true) => write!(f, "X"),
            (false, false) => write!(f, "{{{}}}", items.join(",")),
            (true, false) => write!(f, "X∖{{{}}}", items.join(",")),
        }
    }
}

/// Closed-form sequences in the finite/cofinite algebra. Indices `k + offset`
/// below 1 denote the empty prefix (and no singleton).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinCofDesc {
    Const(FinCofSet),
    /// `{x_{k+offset}}`
    Singleton {
        offset: i64,
    },
    /// `{x_1, …, x_{k+offset}}`
    Prefix {
        offset: i64,
    },
    /// `X ∖ {x_1, …, x_{k+offset}}`
    CoPrefix {
        offset: i64,
    },
    /// `f_p` applied termwise.
    Truncated {
        inner: Box<FinCofDesc>,
        a: FinCofSet,
        b: FinCofSet,
    },
}

impl FinCofDesc {
    fn offsets(&self, out: &mut Vec<i64>) {
        match self {
            FinCofDesc::Const(_) => {}
            FinCofDesc::Singleton { offset } | FinCofDesc::Prefix { offset } | FinCofDesc::CoPrefix { offset } => {
                out.push(*offset)
            }
            FinCofDesc::Truncated { inner, .. } => inner.offsets(out),
        }
    }

    fn listed_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            FinCofDesc::Const(s) => out.extend(s.listed()),
            FinCofDesc::Truncated { inner, a, b } => {
                out.extend(a.listed());
                out.extend(b.listed());
                inner.listed_atoms(out);
            }
            _ => {}
        }
    }

    /// Whether atom `a` belongs to the `k`-th term.
    fn member(&self, k: u64, a: Atom) -> bool {
        let pos = |offset: &i64| k as i64 + offset;
        let in_prefix = |offset: &i64| a >= 1 && (a as i64) <= pos(offset);
        match self {
            FinCofDesc::Const(s) => s.contains(a),
            FinCofDesc::Singleton { offset } => a >= 1 && a as i64 == pos(offset),
            FinCofDesc::Prefix { offset } => in_prefix(offset),
            FinCofDesc::CoPrefix { offset } => !in_prefix(offset),
            FinCofDesc::Truncated { inner, a: lo, b: hi } => (inner.member(k, a) && hi.contains(a)) || lo.contains(a),
        }
    }

    fn shifted(&self, by: i64) -> FinCofDesc {
        match self {
            FinCofDesc::Const(_) => self.clone(),
            FinCofDesc::Singleton { offset } => FinCofDesc::Singleton { offset: offset + by },
            FinCofDesc::Prefix { offset } => FinCofDesc::Prefix { offset: offset + by },
            FinCofDesc::CoPrefix { offset } => FinCofDesc::CoPrefix { offset: offset + by },
            FinCofDesc::Truncated { inner, a, b } => {
                FinCofDesc::Truncated { inner: Box::new(inner.shifted(by)), a: a.clone(), b: b.clone() }
            }
        }
    }
}

/// Witness families that are not chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinCofFamily {
    /// All cofinite subsets; filtered, infimum `∅`.
    AllCofinite,
    /// All finite subsets; directed, supremum `X`.
    AllFinite,
}

/// The algebra of finite and cofinite subsets of an inexhaustible atom set.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinCof;

impl FinCof {
    /// The sequence `A_k = {x_k}`.
    pub fn singletons() -> FinCofDesc {
        FinCofDesc::Singleton { offset: 0 }
    }

    /// The chain `N_j = X ∖ {x_1, …, x_j}`.
    pub fn coprefix_chain() -> FinCofDesc {
        FinCofDesc::CoPrefix { offset: 0 }
    }

    /// Atoms at which two descriptions can differ at index `k`, together
    /// with one representative of every gap between them.
    fn candidates(descs: &[&FinCofDesc], k: u64) -> BTreeSet<Atom> {
        let mut breaks = vec![0, 1];
        let mut offsets = Vec::new();
        for d in descs {
            d.listed_atoms(&mut breaks);
            d.offsets(&mut offsets);
        }
        for o in offsets {
            let p = k as i64 + o;
            if p >= 0 {
                breaks.push(p as Atom);
            }
        }
        breaks.iter().flat_map(|&b| [b, b + 1]).collect()
    }

    fn leq_at(lo: &FinCofDesc, hi: &FinCofDesc, k: u64) -> bool {
        Self::candidates(&[lo, hi], k).into_iter().all(|a| !lo.member(k, a) || hi.member(k, a))
    }

    /// Index beyond which every relation between the given descriptions is
    /// translation invariant in `k`.
    fn stable_from(descs: &[&FinCofDesc], from: u64) -> u64 {
        let (mut atoms, mut offsets) = (Vec::new(), Vec::new());
        for d in descs {
            d.listed_atoms(&mut atoms);
            d.offsets(&mut offsets);
        }
        let top = atoms.into_iter().max().unwrap_or(0) as i64;
        let spread = offsets.iter().map(|o| o.abs()).max().unwrap_or(0);
        from.max((top + 2 * spread + 3) as u64)
    }
}

impl Lattice for FinCof {
    type Elem = FinCofSet;

    fn name(&self) -> String {
        "fincof".into()
    }

    fn meet(&self, x: &FinCofSet, y: &FinCofSet) -> FinCofSet {
        x.intersection(y)
    }

    fn join(&self, x: &FinCofSet, y: &FinCofSet) -> FinCofSet {
        x.union(y)
    }

    fn leq(&self, x: &FinCofSet, y: &FinCofSet) -> bool {
        x.is_subset(y)
    }

    fn is_distributive(&self) -> bool {
        true
    }

    fn bottom(&self) -> Option<FinCofSet> {
        Some(FinCofSet::empty())
    }

    fn top(&self) -> Option<FinCofSet> {
        Some(FinCofSet::full())
    }

    fn show(&self, x: &FinCofSet) -> String {
        x.to_string()
    }
}

impl crate::lattice::Sample for FinCof {
    fn sample(&self, rng: &mut dyn rand::RngCore) -> FinCofSet {
        let mask = rng.next_u32();
        let atoms = (0..6).filter(|b| mask >> b & 1 == 1);
        if mask >> 8 & 1 == 1 {
            FinCofSet::cofinite(atoms)
        } else {
            FinCofSet::finite(atoms)
        }
    }
}

/// The supremum or infimum of a witness chain or family in the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinCofChain {
    /// An explicitly enumerated finite chain.
    Finite(Vec<FinCofSet>),
    /// A closed-form chain `k ≥ 1`.
    Desc(FinCofDesc),
    Family(FinCofFamily),
}

pub fn fincof_bound_oracle(chain: &FinCofChain, side: Side) -> Bound<FinCofSet> {
    let l = FinCof;
    match (chain, side) {
        (FinCofChain::Finite(xs), Side::Lower) => l.join_all(xs).map_or(Bound::NoBound, Bound::Exact),
        (FinCofChain::Finite(xs), Side::Upper) => l.meet_all(xs).map_or(Bound::NoBound, Bound::Exact),
        (FinCofChain::Desc(d), Side::Lower) => l.chain_sup(d, 1),
        (FinCofChain::Desc(d), Side::Upper) => l.chain_inf(d, 1),
        (FinCofChain::Family(f), s) => l.family_bound(f, s),
    }
}

impl OrderOracle for FinCof {
    type Desc = FinCofDesc;
    type Family = FinCofFamily;

    fn eval_desc(&self, d: &FinCofDesc, k: u64) -> Result<FinCofSet> {
        let pos = |o: &i64| (k as i64 + o).max(0) as Atom;
        Ok(match d {
            FinCofDesc::Const(s) => s.clone(),
            FinCofDesc::Singleton { offset } if pos(offset) >= 1 => FinCofSet::finite([pos(offset)]),
            FinCofDesc::Singleton { .. } => FinCofSet::empty(),
            FinCofDesc::Prefix { offset } => FinCofSet::finite(1..=pos(offset)),
            FinCofDesc::CoPrefix { offset } => FinCofSet::cofinite(1..=pos(offset)),
            FinCofDesc::Truncated { inner, a, b } => {
                let p = TruncationPair::new(self, a.clone(), b.clone());
                p.f(self, &self.eval_desc(inner, k)?)
            }
        })
    }

    fn const_desc(&self, x: &FinCofSet) -> Option<FinCofDesc> {
        Some(FinCofDesc::Const(x.clone()))
    }

    fn shift_desc(&self, d: &FinCofDesc, by: i64) -> Option<FinCofDesc> {
        Some(d.shifted(by))
    }

    fn prove_leq_from(&self, lo: &FinCofDesc, hi: &FinCofDesc, from: u64) -> Proof {
        let stop = Self::stable_from(&[lo, hi], from.max(1));
        match (from.max(1)..=stop).find(|&k| !Self::leq_at(lo, hi, k)) {
            Some(k) => Proof::Refuted(k),
            None => Proof::Proved,
        }
    }

    fn chain_sup(&self, d: &FinCofDesc, from: u64) -> Bound<FinCofSet> {
        match d {
            FinCofDesc::Const(s) => Bound::Exact(s.clone()),
            // upper bounds of a growing prefix are the cofinite sets avoiding
            // its atoms; there is no least one
            FinCofDesc::Prefix { .. } => Bound::NoBound,
            _ => match self.eventual_constancy(d) {
                Constancy::Constant { from: c, value } if c <= from.max(1) => Bound::Exact(value),
                _ => Bound::Unknown,
            },
        }
    }

    fn chain_inf(&self, d: &FinCofDesc, from: u64) -> Bound<FinCofSet> {
        match d {
            FinCofDesc::Const(s) => Bound::Exact(s.clone()),
            // lower bounds are the finite sets of off-sequence atoms; there is
            // no greatest one
            FinCofDesc::CoPrefix { .. } => Bound::NoBound,
            _ => match self.eventual_constancy(d) {
                Constancy::Constant { from: c, value } if c <= from.max(1) => Bound::Exact(value),
                _ => Bound::Unknown,
            },
        }
    }

    fn eventual_constancy(&self, d: &FinCofDesc) -> Constancy<FinCofSet> {
        let next = d.shifted(1);
        let stable = Self::stable_from(&[d, &next], 1);
        let same = |k| Self::leq_at(d, &next, k) && Self::leq_at(&next, d, k);
        if !same(stable) {
            return Constancy::Never;
        }
        let mut from = stable;
        while from > 1 && same(from - 1) {
            from -= 1;
        }
        match self.eval_desc(d, from) {
            Ok(value) => Constancy::Constant { from, value },
            Err(_) => Constancy::Unknown,
        }
    }

    fn truncated_tail(&self, d: &FinCofDesc, p: &TruncationPair<FinCofSet>) -> Option<(u64, FinCofDesc)> {
        Some((1, FinCofDesc::Truncated { inner: Box::new(d.clone()), a: p.a.clone(), b: p.b.clone() }))
    }

    fn o1_is_eventual_constancy(&self) -> bool {
        true
    }

    fn family_bound(&self, fam: &FinCofFamily, side: Side) -> Bound<FinCofSet> {
        match (fam, side) {
            (FinCofFamily::AllCofinite, Side::Upper) => Bound::Exact(FinCofSet::empty()),
            (FinCofFamily::AllFinite, Side::Lower) => Bound::Exact(FinCofSet::full()),
            (FinCofFamily::AllCofinite, Side::Lower) => Bound::Exact(FinCofSet::full()),
            (FinCofFamily::AllFinite, Side::Upper) => Bound::Exact(FinCofSet::empty()),
        }
    }

    /// Member `j` is built from the atoms at the set bits of `j`.
    fn family_member(&self, fam: &FinCofFamily, j: u64) -> FinCofSet {
        let atoms = (0..64).filter(|b| j >> b & 1 == 1);
        match fam {
            FinCofFamily::AllCofinite => FinCofSet::cofinite(atoms),
            FinCofFamily::AllFinite => FinCofSet::finite(atoms),
        }
    }

    fn family_entry(&self, d: &FinCofDesc, member: &FinCofSet, side: Side) -> Option<u64> {
        let m = FinCofDesc::Const(member.clone());
        let (lo, hi) = match side {
            Side::Lower => (&m, d),
            Side::Upper => (d, &m),
        };
        let stop = Self::stable_from(&[lo, hi], 1);
        if !Self::leq_at(lo, hi, stop) {
            return None;
        }
        let mut from = stop;
        while from > 1 && Self::leq_at(lo, hi, from - 1) {
            from -= 1;
        }
        Some(from)
    }

    fn prove_family_containment(&self, d: &FinCofDesc, fam: &FinCofFamily, side: Side) -> Proof {
        // Containment for every member means each single atom is eventually
        // absent (cofinite family) or present (finite family). Atoms past
        // the stable index all behave alike, so a finite range suffices.
        let want_present = match (fam, side) {
            (FinCofFamily::AllCofinite, Side::Upper) => false,
            (FinCofFamily::AllFinite, Side::Lower) => true,
            _ => return Proof::Unknown,
        };
        let stop = Self::stable_from(&[d], 1);
        match (0..=stop).map(|a| (a, 2 * stop + a + 2)).find(|&(a, k)| d.member(k, a) != want_present) {
            Some((_, k)) => Proof::Refuted(k),
            None => Proof::Proved,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::check_lattice_axioms_sampled;

    #[test]
    fn boolean_algebra_laws() {
        let l = FinCof;
        assert_eq!(check_lattice_axioms_sampled(&l, 2000, 7), None);
        let xs = [
            FinCofSet::empty(),
            FinCofSet::full(),
            FinCofSet::finite([1, 2]),
            FinCofSet::cofinite([2, 3]),
            FinCofSet::cofinite([]),
            FinCofSet::finite([0]),
        ];
        for x in &xs {
            assert_eq!(l.join(x, &x.complement()), FinCofSet::full());
            assert_eq!(l.meet(x, &x.complement()), FinCofSet::empty());
            for y in &xs {
                assert_eq!(l.leq(x, y), l.meet(x, y) == *x);
            }
        }
        assert_eq!(FinCofSet::cofinite([2, 3]).union(&FinCofSet::finite([3, 4])), FinCofSet::cofinite([2]));
        assert_eq!(FinCofSet::cofinite([2]).to_string(), "X∖{x2}");
    }

    #[test]
    fn bound_oracle() {
        let chain = FinCofChain::Finite(vec![FinCofSet::finite([1]), FinCofSet::finite([1, 2])]);
        assert_eq!(fincof_bound_oracle(&chain, Side::Lower), Bound::Exact(FinCofSet::finite([1, 2])));
        let constant = FinCofChain::Finite(vec![FinCofSet::empty()]);
        assert_eq!(fincof_bound_oracle(&constant, Side::Lower), Bound::Exact(FinCofSet::empty()));
        let all = FinCofChain::Family(FinCofFamily::AllCofinite);
        assert_eq!(fincof_bound_oracle(&all, Side::Upper), Bound::Exact(FinCofSet::empty()));
        let coprefix = FinCofChain::Desc(FinCof::coprefix_chain());
        assert_eq!(fincof_bound_oracle(&coprefix, Side::Upper), Bound::NoBound);
    }

    #[test]
    fn symbolic_containment() {
        let l = FinCof;
        let s = FinCof::singletons();
        // {x_k} ⊆ X ∖ {x_1..x_{k-1}}
        assert_eq!(l.prove_leq_from(&s, &FinCofDesc::CoPrefix { offset: -1 }, 1), Proof::Proved);
        assert_eq!(l.prove_leq_from(&s, &FinCofDesc::CoPrefix { offset: 0 }, 1), Proof::Refuted(1));
        assert_eq!(l.prove_leq_from(&s, &FinCofDesc::Prefix { offset: 0 }, 1), Proof::Proved);
        assert_eq!(l.prove_leq_from(&FinCofDesc::Const(FinCofSet::empty()), &s, 1), Proof::Proved);
        let b = FinCofDesc::Const(FinCofSet::cofinite([3, 5]));
        assert_eq!(l.prove_leq_from(&s, &b, 1), Proof::Refuted(3));
        assert_eq!(l.prove_leq_from(&s, &b, 6), Proof::Proved);
        assert_eq!(l.eventual_constancy(&s), Constancy::Never);
        assert_eq!(
            l.eventual_constancy(&FinCofDesc::Const(FinCofSet::finite([4]))),
            Constancy::Constant { from: 1, value: FinCofSet::finite([4]) }
        );
        assert_eq!(l.prove_family_containment(&s, &FinCofFamily::AllCofinite, Side::Upper), Proof::Proved);
        let p = FinCofDesc::Prefix { offset: 0 };
        assert!(matches!(l.prove_family_containment(&p, &FinCofFamily::AllCofinite, Side::Upper), Proof::Refuted(_)));
        let member = l.family_member(&FinCofFamily::AllCofinite, 0b1010);
        assert_eq!(member, FinCofSet::cofinite([1, 3]));
        assert_eq!(l.family_entry(&s, &member, Side::Upper), Some(4));
    }

    #[test]
    fn truncated_singletons() {
        let l = FinCof;
        let p = TruncationPair::new(&l, FinCofSet::empty(), FinCofSet::cofinite([2]));
        let (from, t) = l.truncated_tail(&FinCof::singletons(), &p).unwrap();
        assert_eq!(from, 1);
        assert_eq!(l.eval_desc(&t, 2).unwrap(), FinCofSet::empty());
        assert_eq!(l.eval_desc(&t, 3).unwrap(), FinCofSet::finite([3]));
        assert_eq!(l.eventual_constancy(&t), Constancy::Never);
        let q = TruncationPair::new(&l, FinCofSet::empty(), FinCofSet::finite([1, 2]));
        let (_, u) = l.truncated_tail(&FinCof::singletons(), &q).unwrap();
        assert_eq!(l.eventual_constancy(&u), Constancy::Constant { from: 3, value: FinCofSet::empty() });
    }
}

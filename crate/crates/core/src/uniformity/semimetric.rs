use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::convergence::{Basis, Verdict, Witness};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice, LatticeGroup, Sample, TruncationPair};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::spaces::{C00Vec, EvLinSeq, RatVec, TableLattice};

use super::ExtValue;

type Eval<E> = dyn Fn(&E, &E) -> ExtValue + Send + Sync;

/// A named map `L × L → [0, ∞]`, intended to lie in `D(L)`.
pub struct LatticeSemimetric<E> {
    name: String,
    eval: Arc<Eval<E>>,
}

impl<E> Clone for LatticeSemimetric<E> {
    fn clone(&self) -> Self {
        LatticeSemimetric { name: self.name.clone(), eval: Arc::clone(&self.eval) }
    }
}

impl<E> fmt::Debug for LatticeSemimetric<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeSemimetric({})", self.name)
    }
}

impl<E: 'static> LatticeSemimetric<E> {
    pub fn new(name: impl Into<String>, eval: impl Fn(&E, &E) -> ExtValue + Send + Sync + 'static) -> Self {
        LatticeSemimetric { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: &E, y: &E) -> ExtValue {
        (self.eval)(x, y)
    }

    /// `d ≡ 0`
    pub fn zero() -> Self {
        Self::new("zero", |_, _| ExtValue::zero())
    }

    /// `0` on the diagonal, `1` elsewhere.
    pub fn discrete() -> Self
    where
        E: PartialEq,
    {
        Self::new("discrete", |x: &E, y: &E| ExtValue::Finite(rational::int(i64::from(x != y))))
    }

    /// `(x, y) ↦ d(φ x, φ y)`
    pub fn pullback<F: 'static>(
        name: impl Into<String>,
        d: LatticeSemimetric<F>,
        phi: impl Fn(&E) -> F + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, move |x, y| d.eval(&phi(x), &phi(y)))
    }
}

impl LatticeSemimetric<Rational> {
    /// `|x − y|`
    pub fn abs() -> Self {
        Self::new("abs", |x: &Rational, y: &Rational| ExtValue::Finite((x - y).abs()))
    }
}

/// Elements with an (extended) `ℓ1` distance.
pub trait L1Distance {
    fn l1_distance(&self, other: &Self) -> ExtValue;
}

impl L1Distance for RatVec {
    fn l1_distance(&self, other: &Self) -> ExtValue {
        ExtValue::Finite(self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum())
    }
}

impl L1Distance for C00Vec {
    fn l1_distance(&self, other: &Self) -> ExtValue {
        ExtValue::Finite(crate::spaces::C00.sub(self, other).l1())
    }
}

impl L1Distance for EvLinSeq {
    fn l1_distance(&self, other: &Self) -> ExtValue {
        crate::spaces::EvLin.sub(self, other).norm()
    }
}

impl<E: L1Distance + 'static> LatticeSemimetric<E> {
    /// `Σ |x_i − y_i|`, possibly `+∞`.
    pub fn l1() -> Self {
        Self::new("l1", |x: &E, y: &E| x.l1_distance(y))
    }
}

impl LatticeSemimetric<usize> {
    /// `h(x ∨ y) − h(x ∧ y)` with `h` the height in the lattice; a metric in
    /// `D(L)` on distributive carriers.
    pub fn rank(l: &TableLattice) -> Self {
        let heights = heights(l);
        let l = l.clone();
        Self::new("rank", move |x: &usize, y: &usize| {
            let (j, m) = (l.join(x, y), l.meet(x, y));
            ExtValue::Finite(rational::int((heights[j] - heights[m]) as i64))
        })
    }

    /// Distance through the two-element quotient `x ↦ [c ≤ x]`.
    pub fn filter(l: &TableLattice, c: usize) -> Self {
        let l2 = l.clone();
        let name = format!("filter:{}", l.label(c));
        Self::new(name, move |x: &usize, y: &usize| {
            ExtValue::Finite(rational::int(i64::from(l2.leq(&c, x) != l2.leq(&c, y))))
        })
    }

    /// Loads `{"carrier": name, "distances": [[i, j, "p/q" | "inf"], ...]}`.
    /// One entry covers both orders; off-diagonal pairs may not be missing.
    pub fn from_table_json(l: &TableLattice, text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            carrier: String,
            #[serde(default)]
            name: Option<String>,
            distances: Vec<(serde_json::Value, serde_json::Value, String)>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.carrier != l.name() {
            return Err(Error::InvalidDistanceTable(format!("table is for `{}`, not `{}`", doc.carrier, l.name())));
        }
        let resolve = |v: &serde_json::Value| -> Result<usize> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(|i| i as usize)
                    .filter(|&i| i < l.size())
                    .ok_or_else(|| Error::UnknownElement(n.to_string())),
                serde_json::Value::String(s) => l.element(s),
                other => Err(Error::UnknownElement(other.to_string())),
            }
        };
        let mut table = BTreeMap::new();
        for (i, j, v) in &doc.distances {
            let (i, j) = (resolve(i)?, resolve(j)?);
            let v = ExtValue::parse(v)?;
            if i == j && !v.is_zero() {
                return Err(Error::InvalidDistanceTable(format!("d({0}, {0}) = {v}", l.label(i))));
            }
            if let Some(prev) = table.insert((i, j), v.clone()) {
                if prev != v {
                    return Err(Error::InvalidDistanceTable(format!("conflicting entries for ({i}, {j})")));
                }
            }
        }
        for (&(i, j), v) in &table {
            if table.get(&(j, i)).is_some_and(|w| w != v) {
                return Err(Error::InvalidDistanceTable(format!(
                    "asymmetric entries for ({}, {})",
                    l.label(i),
                    l.label(j)
                )));
            }
        }
        let n = l.size();
        let mut full = vec![ExtValue::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                full[i * n + j] =
                    table.get(&(i, j)).or_else(|| table.get(&(j, i))).cloned().ok_or_else(|| {
                        Error::InvalidDistanceTable(format!("missing ({}, {})", l.label(i), l.label(j)))
                    })?;
            }
        }
        let name = doc.name.unwrap_or_else(|| "table".to_string());
        Ok(Self::new(name, move |x: &usize, y: &usize| full[x * n + y].clone()))
    }
}

/// Height of every element: length of the longest chain from the bottom.
pub fn heights(l: &TableLattice) -> Vec<usize> {
    let els = l.elements();
    let mut h = vec![0usize; els.len()];
    let mut order: Vec<usize> = els.clone();
    order.sort_by_key(|&x| els.iter().filter(|&&y| l.leq(&y, &x)).count());
    for &x in &order {
        h[x] = els.iter().filter(|&&y| y != x && l.leq(&y, &x)).map(|&y| h[y] + 1).max().unwrap_or(0);
    }
    h
}

/// A nonempty list of semimetrics on one carrier.
#[derive(Debug, Clone)]
pub struct SemimetricFamily<E> {
    carrier: String,
    members: Vec<LatticeSemimetric<E>>,
}

impl<E: 'static> SemimetricFamily<E> {
    pub fn new(carrier: impl Into<String>, members: Vec<LatticeSemimetric<E>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty("semimetric family"));
        }
        Ok(SemimetricFamily { carrier: carrier.into(), members })
    }

    pub fn single(carrier: impl Into<String>, d: LatticeSemimetric<E>) -> Self {
        SemimetricFamily { carrier: carrier.into(), members: vec![d] }
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn members(&self) -> &[LatticeSemimetric<E>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether every member vanishes on `(x, y)`.
    pub fn all_zero(&self, x: &E, y: &E) -> bool {
        self.members.iter().all(|d| d.eval(x, y).is_zero())
    }
}

/// Which semimetric axiom failed.
fn axiom_triple<L: Lattice>(
    l: &L,
    d: &LatticeSemimetric<L::Elem>,
    x: &L::Elem,
    y: &L::Elem,
    z: &L::Elem,
) -> Option<String>
where
    L::Elem: 'static,
{
    let s = |e: &L::Elem| l.show(e);
    let dxy = d.eval(x, y);
    if !d.eval(x, x).is_zero() {
        return Some(format!("d({0}, {0}) = {1} ≠ 0", s(x), d.eval(x, x)));
    }
    let dyx = d.eval(y, x);
    if dxy != dyx {
        return Some(format!("symmetry: d({}, {}) = {dxy} but d({}, {}) = {dyx}", s(x), s(y), s(y), s(x)));
    }
    let (dxz, dyz) = (d.eval(x, z), d.eval(y, z));
    if dxz > &dxy + &dyz {
        return Some(format!("triangle: d({}, {}) = {dxz} > {dxy} + {dyz}", s(x), s(z)));
    }
    let joined = d.eval(&l.join(x, z), &l.join(y, z));
    if joined > dxy {
        return Some(format!("∨-contraction at z = {}: {joined} > {dxy}", s(z)));
    }
    let met = d.eval(&l.meet(x, z), &l.meet(y, z));
    if met > dxy {
        return Some(format!("∧-contraction at z = {}: {met} > {dxy}", s(z)));
    }
    None
}

/// Exhaustive check of the `D(L)` axioms on a finite carrier.
pub fn validate_semimetric<L: FiniteLattice>(l: &L, d: &LatticeSemimetric<L::Elem>) -> Verdict
where
    L::Elem: 'static,
{
    let els = l.elements();
    let n = els.len() as u64;
    let hit = par::find_first(Exec::default(), 0..n * n * n, |i| {
        let (x, y, z) = (&els[(i / (n * n)) as usize], &els[(i / n % n) as usize], &els[(i % n) as usize]);
        axiom_triple(l, d, x, y, z).map(|msg| (i, msg))
    });
    match hit {
        None => Verdict::exact(Basis::Exhaustive),
        Some((i, msg)) => Verdict::falsified(Basis::Exhaustive, Witness::at(i, msg)),
    }
}

/// Seeded random check of the `D(L)` axioms.
pub fn validate_semimetric_sampled<L: Sample>(l: &L, d: &LatticeSemimetric<L::Elem>, samples: u64, seed: u64) -> Verdict
where
    L::Elem: 'static,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let (x, y, z) = (l.sample(&mut rng), l.sample(&mut rng), l.sample(&mut rng));
        // comparable and repeated arguments are rare among samples
        let w = l.meet(&x, &y);
        for (a, b, c) in [(&x, &y, &z), (&w, &x, &z), (&x, &x, &y)] {
            if let Some(msg) = axiom_triple(l, d, a, b, c) {
                return Verdict::falsified(Basis::Horizon, Witness::at(i, msg));
            }
        }
    }
    Verdict::at_horizon(samples).with_note(format!("{samples} seeded samples"))
}

/// `d_{a,b}(x, y) = d(f_{a,b} x, f_{a,b} y)`
pub fn derived_semimetric<L>(
    l: &L,
    d: &LatticeSemimetric<L::Elem>,
    p: &TruncationPair<L::Elem>,
) -> Result<LatticeSemimetric<L::Elem>>
where
    L: Lattice + Clone + Send + 'static,
    L::Elem: 'static,
{
    if !p.is_canonical() {
        return Err(Error::NonCanonicalPair { a: l.show(&p.a), b: l.show(&p.b) });
    }
    let (l2, d2, p2) = (l.clone(), d.clone(), p.clone());
    let name = format!("{}[{}]", d.name(), p.show(l));
    Ok(LatticeSemimetric::new(name, move |x, y| d2.eval(&p2.f(&l2, x), &p2.f(&l2, y))))
}

/// `{d_{a,b} : d ∈ D, (a, b) ∈ J}`
pub fn ustar_family<L>(
    l: &L,
    family: &SemimetricFamily<L::Elem>,
    pairs: &[TruncationPair<L::Elem>],
) -> Result<SemimetricFamily<L::Elem>>
where
    L: Lattice + Clone + Send + 'static,
    L::Elem: 'static,
{
    if pairs.is_empty() {
        return Err(Error::Empty("truncation pair list"));
    }
    let members = family
        .members()
        .iter()
        .flat_map(|d| pairs.iter().map(move |p| derived_semimetric(l, d, p)))
        .collect::<Result<Vec<_>>>()?;
    SemimetricFamily::new(family.carrier(), members)
}

/// All canonical pairs `(a, b)` with `a ≤ b` drawn from `s`.
pub fn canonical_pairs<L: Lattice>(l: &L, s: &[L::Elem]) -> Vec<TruncationPair<L::Elem>> {
    let mut out = Vec::new();
    for a in s {
        for b in s {
            if l.leq(a, b) {
                out.push(TruncationPair::new(l, a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Whether two finite families induce the same uniformity on `[a, b]`.
///
/// On a finite set a finite family of semimetrics generates the uniformity
/// whose smallest entourage is its common zero set, so the two uniformities
/// agree iff the zero sets restricted to `[a, b]²` coincide. The witness is a
/// pair in one zero set but not the other, with the positive distance that
/// separates it.
pub fn interval_agreement<L: FiniteLattice>(
    l: &L,
    du: &SemimetricFamily<L::Elem>,
    dv: &SemimetricFamily<L::Elem>,
    p: &TruncationPair<L::Elem>,
) -> Result<Verdict>
where
    L::Elem: 'static,
{
    if !p.is_canonical() {
        return Err(Error::NonCanonicalPair { a: l.show(&p.a), b: l.show(&p.b) });
    }
    let interval: Vec<L::Elem> = l.elements().into_iter().filter(|x| l.leq(&p.a, x) && l.leq(x, &p.b)).collect();
    for (i, x) in interval.iter().enumerate() {
        for (j, y) in interval.iter().enumerate() {
            let (zu, zv) = (du.all_zero(x, y), dv.all_zero(x, y));
            if zu != zv {
                let (fam, other) = if zu { (dv, "first") } else { (du, "second") };
                let sep = fam.members().iter().map(|d| d.eval(x, y)).max().unwrap_or_else(ExtValue::zero);
                let detail = format!(
                    "({}, {}) is identified by the {other} family but separated by distance {sep}",
                    l.show(x),
                    l.show(y)
                );
                return Ok(Verdict::falsified(Basis::Exhaustive, Witness::pair(i as u64, j as u64, detail)));
            }
        }
    }
    Ok(Verdict::exact(Basis::Exhaustive))
}

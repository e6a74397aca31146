use std::collections::BTreeMap;

use serde::Deserialize;

use num_integer::Integer;

use crate::convergence::{Bound, Constancy, NoFamily, OrderOracle};
use crate::error::{Error, Result};
use crate::lattice::{check_distributive, CarrierKind, FiniteLattice, Lattice, TruncationPair};
use crate::symbolic::Proof;

/// A finite lattice given by its full meet and join tables. Elements are
/// indices into the label list.
#[derive(Debug, Clone)]
pub struct TableLattice {
    name: String,
    labels: Vec<String>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: Option<usize>,
    top: Option<usize>,
    distributive: bool,
}

#[derive(Deserialize)]
struct Document {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl TableLattice {
    /// Builds the lattice from a partial order given as `leq[i][j]`.
    pub fn from_order(name: &str, labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty("element list"));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::NotAPartialOrder("order matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::NotAPartialOrder(format!("{} ≰ {}", labels[i], labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::NotAPartialOrder(format!("{} and {} form a cycle", labels[i], labels[j])));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::NotAPartialOrder(format!(
                            "{} ≤ {} ≤ {} but {} ≰ {}",
                            labels[i], labels[j], labels[k], labels[i], labels[k]
                        )));
                    }
                }
            }
        }
        let extremum = |bounds: Vec<usize>, above: bool| {
            bounds.iter().copied().find(|&c| bounds.iter().all(|&o| if above { leq[c][o] } else { leq[o][c] }))
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower = (0..n).filter(|&z| leq[z][x] && leq[z][y]).collect();
                let upper = (0..n).filter(|&z| leq[x][z] && leq[y][z]).collect();
                let pair = || (labels[x].clone(), labels[y].clone());
                meet[x * n + y] = extremum(lower, false).ok_or_else(|| {
                    let (x, y) = pair();
                    Error::NotALattice { x, y, missing: "infimum" }
                })?;
                join[x * n + y] = extremum(upper, true).ok_or_else(|| {
                    let (x, y) = pair();
                    Error::NotALattice { x, y, missing: "supremum" }
                })?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x]));
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t]));
        let mut lattice = TableLattice { name: name.to_string(), labels, meet, join, bottom, top, distributive: false };
        lattice.distributive = check_distributive(&lattice).holds();
        Ok(lattice)
    }

    /// Builds the lattice from its cover relation (`lo ⋖ hi` pairs).
    pub fn from_covers(name: &str, labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::UnknownElement(format!("cover index ({lo}, {hi})")));
            }
            leq[lo][hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_order(name, labels, &leq)
    }

    /// Loads `{"elements": [names], "covers": [[lo, hi], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let index: BTreeMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        if index.len() != doc.elements.len() {
            return Err(Error::Parse("duplicate element names".into()));
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
        let covers = doc.covers.iter().map(|(lo, hi)| Ok((lookup(lo)?, lookup(hi)?))).collect::<Result<Vec<_>>>()?;
        let name = doc.name.clone().unwrap_or_else(|| "table".to_string());
        Self::from_covers(&name, doc.elements.clone(), &covers)
    }

    pub fn to_json(&self) -> String {
        let n = self.labels.len();
        let mut covers = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo != hi
                    && self.leq(&lo, &hi)
                    && !(0..n).any(|m| m != lo && m != hi && self.leq(&lo, &m) && self.leq(&m, &hi))
                {
                    covers.push((self.labels[lo].clone(), self.labels[hi].clone()));
                }
            }
        }
        serde_json::json!({ "name": self.name, "elements": self.labels, "covers": covers }).to_string()
    }

    /// Subsets of `{1..n}`; the element index is the bitmask.
    pub fn powerset(n: u32) -> Self {
        let size = 1usize << n;
        let labels = (0..size)
            .map(|m| {
                let items: Vec<String> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let leq: Vec<Vec<bool>> = (0..size).map(|x| (0..size).map(|y| x & y == x).collect()).collect();
        Self::from_order(&format!("powerset{n}"), labels, &leq).expect("powerset is a lattice")
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        Self::from_order(&format!("chain{n}"), labels, &leq).expect("chains are lattices")
    }

    /// Divisors of `m` ordered by divisibility.
    pub fn divisors(m: u64) -> Self {
        let ds: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        let labels = ds.iter().map(u64::to_string).collect();
        let leq: Vec<Vec<bool>> = ds.iter().map(|x| ds.iter().map(|y| y % x == 0).collect()).collect();
        Self::from_order(&format!("div{m}"), labels, &leq).expect("divisor lattices are lattices")
    }

    /// The pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn n5() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_covers("n5", labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5 is a lattice")
    }

    /// The diamond with three atoms.
    pub fn m3() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_covers("m3", labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3 is a lattice")
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// Whether `s` is nonempty and closed under both operations.
    pub fn is_sublattice(&self, s: &[usize]) -> bool {
        !s.is_empty()
            && s.iter().all(|&x| x < self.labels.len())
            && s.iter().all(|x| s.iter().all(|y| s.contains(&self.meet(x, y)) && s.contains(&self.join(x, y))))
    }

    /// Every sublattice, as sorted element lists. Only for small carriers.
    pub fn sublattices(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        assert!(n <= 16, "sublattice enumeration is exponential");
        (1u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_sublattice(s))
            .collect()
    }
}

impl Lattice for TableLattice {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn meet(&self, x: &usize, y: &usize) -> usize {
        self.meet[x * self.labels.len() + y]
    }

    fn join(&self, x: &usize, y: &usize) -> usize {
        self.join[x * self.labels.len() + y]
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.labels.len()
    }

    fn is_distributive(&self) -> bool {
        self.distributive
    }

    fn kind(&self) -> CarrierKind {
        CarrierKind::FiniteTable
    }

    fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    fn top(&self) -> Option<usize> {
        self.top
    }

    fn show(&self, x: &usize) -> String {
        self.labels.get(*x).cloned().unwrap_or_else(|| format!("#{x}"))
    }
}

impl FiniteLattice for TableLattice {
    fn elements(&self) -> Vec<usize> {
        (0..self.labels.len()).collect()
    }

    fn size(&self) -> usize {
        self.labels.len()
    }

    fn index_of(&self, x: &usize) -> Option<usize> {
        self.contains(x).then_some(*x)
    }
}

/// An eventually periodic sequence: `prefix` followed by `cycle` repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Periodic {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Empty("periodic cycle"));
        }
        Ok(Periodic { prefix, cycle })
    }

    pub fn constant(x: usize) -> Self {
        Periodic { prefix: Vec::new(), cycle: vec![x] }
    }

    pub fn at(&self, k: u64) -> usize {
        let i = (k.max(1) - 1) as usize;
        match self.prefix.get(i) {
            Some(&x) => x,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// Indices past which the sequence is purely periodic.
    fn settled(&self) -> u64 {
        self.prefix.len() as u64
    }

    fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        Periodic {
            prefix: self.prefix.iter().map(|&x| f(x)).collect(),
            cycle: self.cycle.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl TableLattice {
    fn check_desc(&self, d: &Periodic) -> Result<()> {
        d.prefix.iter().chain(&d.cycle).try_for_each(|x| self.check_member(x))
    }

    /// All values taken at indices `k ≥ from`.
    fn tail_values(&self, d: &Periodic, from: u64) -> Vec<usize> {
        let start = from.max(1);
        let stop = start.max(d.settled() + 1) + d.cycle.len() as u64;
        (start..stop).map(|k| d.at(k)).collect()
    }
}

impl OrderOracle for TableLattice {
    type Desc = Periodic;
    type Family = NoFamily;

    fn eval_desc(&self, d: &Periodic, k: u64) -> Result<usize> {
        self.check_desc(d)?;
        Ok(d.at(k))
    }

    fn const_desc(&self, x: &usize) -> Option<Periodic> {
        Some(Periodic::constant(*x))
    }

    fn shift_desc(&self, d: &Periodic, by: i64) -> Option<Periodic> {
        if by >= 0 {
            let by = by as u64;
            let prefix = (1..=d.settled().saturating_sub(by)).map(|k| d.at(k + by)).collect();
            let start = d.settled().max(by) + 1;
            let cycle = (start..start + d.cycle.len() as u64).map(|k| d.at(k)).collect();
            Some(Periodic { prefix, cycle })
        } else {
            // indices below 1 are never inspected; pad with the first value
            let mut prefix = vec![d.at(1); by.unsigned_abs() as usize];
            prefix.extend(&d.prefix);
            Some(Periodic { prefix, cycle: d.cycle.clone() })
        }
    }

    fn prove_leq_from(&self, lo: &Periodic, hi: &Periodic, from: u64) -> Proof {
        let period = lo.cycle.len().lcm(&hi.cycle.len()) as u64;
        let start = from.max(1);
        let stop = start.max(lo.settled().max(hi.settled()) + 1) + period;
        match (start..stop).find(|&k| !self.leq(&lo.at(k), &hi.at(k))) {
            Some(k) => Proof::Refuted(k),
            None => Proof::Proved,
        }
    }

    fn chain_sup(&self, d: &Periodic, from: u64) -> Bound<usize> {
        self.join_all(&self.tail_values(d, from)).map_or(Bound::Unknown, Bound::Exact)
    }

    fn chain_inf(&self, d: &Periodic, from: u64) -> Bound<usize> {
        self.meet_all(&self.tail_values(d, from)).map_or(Bound::Unknown, Bound::Exact)
    }

    fn eventual_constancy(&self, d: &Periodic) -> Constancy<usize> {
        let value = d.cycle[0];
        if d.cycle.iter().any(|&x| x != value) {
            return Constancy::Never;
        }
        let from = d.prefix.iter().rposition(|&x| x != value).map_or(1, |i| i as u64 + 2);
        Constancy::Constant { from, value }
    }

    fn truncated_tail(&self, d: &Periodic, p: &TruncationPair<usize>) -> Option<(u64, Periodic)> {
        Some((1, d.map(|x| p.f(self, &x))))
    }

    fn o1_is_eventual_constancy(&self) -> bool {
        true
    }

    fn family_member(&self, fam: &NoFamily, _j: u64) -> usize {
        match *fam {}
    }
}

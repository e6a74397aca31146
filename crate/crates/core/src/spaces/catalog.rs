use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice};
use crate::uniformity::{LatticeSemimetric, SemimetricFamily};

use super::{EvLin, FinCof, QLine, QVec, TableLattice, C00};

/// One of the built-in carriers.
#[derive(Debug, Clone)]
pub enum Carrier {
    Table(TableLattice),
    QLine(QLine),
    QVec(QVec),
    C00(C00),
    FinCof(FinCof),
    EvLin(EvLin),
}

impl Carrier {
    pub fn name(&self) -> String {
        match self {
            Carrier::Table(l) => l.name(),
            Carrier::QLine(l) => l.name(),
            Carrier::QVec(l) => l.name(),
            Carrier::C00(l) => l.name(),
            Carrier::FinCof(l) => l.name(),
            Carrier::EvLin(l) => l.name(),
        }
    }

    pub fn is_distributive(&self) -> bool {
        match self {
            Carrier::Table(l) => l.is_distributive(),
            _ => true,
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Carrier::Table(l) => l.is_bounded(),
            Carrier::FinCof(l) => l.is_bounded(),
            _ => false,
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(self, Carrier::QLine(_) | Carrier::QVec(_) | Carrier::C00(_) | Carrier::EvLin(_))
    }

    pub fn as_table(&self) -> Option<&TableLattice> {
        match self {
            Carrier::Table(l) => Some(l),
            _ => None,
        }
    }
}

/// A catalog carrier with the names of its semimetrics.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub carrier: Carrier,
    pub semimetrics: Vec<String>,
    /// Whether the carrier answers supremum/infimum queries for sequences.
    pub bound_oracle: bool,
}

fn finite_entry(l: TableLattice) -> CatalogEntry {
    let semimetrics = finite_families(&l).iter().map(|f| f.carrier().to_string()).collect();
    CatalogEntry { id: l.name(), carrier: Carrier::Table(l), semimetrics, bound_oracle: true }
}

fn symbolic_entry(id: &str, carrier: Carrier, semimetrics: &[&str], bound_oracle: bool) -> CatalogEntry {
    CatalogEntry {
        id: id.to_string(),
        carrier,
        semimetrics: semimetrics.iter().map(|s| s.to_string()).collect(),
        bound_oracle,
    }
}

/// The finite carriers of the catalog.
pub fn finite_carriers() -> Vec<TableLattice> {
    let mut out: Vec<TableLattice> = (1..=4).map(TableLattice::powerset).collect();
    out.extend((2..=5).map(TableLattice::chain));
    out.push(TableLattice::divisors(60));
    out.push(TableLattice::n5());
    out.push(TableLattice::m3());
    out
}

/// Every built-in carrier, in a stable order.
pub fn standard_carriers() -> Vec<CatalogEntry> {
    let mut out = vec![
        symbolic_entry("qline", Carrier::QLine(QLine), &["abs"], true),
        symbolic_entry("qvec3", Carrier::QVec(QVec::new(3)), &["l1"], true),
        symbolic_entry("c00", Carrier::C00(C00), &["l1"], true),
        symbolic_entry("fincof", Carrier::FinCof(FinCof), &["discrete", "zero"], true),
        symbolic_entry("evlin", Carrier::EvLin(EvLin), &["l1"], false),
    ];
    out.extend(finite_carriers().into_iter().map(finite_entry));
    out
}

/// Finds a carrier by its identifier. `qvecN` accepts any dimension `N ≥ 1`.
pub fn lookup(id: &str) -> Result<CatalogEntry> {
    if let Some(dim) = id.strip_prefix("qvec").and_then(|n| n.parse::<usize>().ok()) {
        if dim >= 1 {
            return Ok(symbolic_entry(id, Carrier::QVec(QVec::new(dim)), &["l1"], true));
        }
    }
    standard_carriers().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownElement(id.to_string()))
}

/// Elements with exactly one lower cover.
pub fn join_irreducibles(l: &TableLattice) -> Vec<usize> {
    l.elements()
        .into_iter()
        .filter(|&x| {
            let below: Vec<usize> = l.elements().into_iter().filter(|&y| y != x && l.leq(&y, &x)).collect();
            !below.is_empty() && l.join_all(&below) != Some(x)
        })
        .collect()
}

/// The semimetric families attached to a finite carrier. Each family is
/// labelled by its name in `carrier()`; `rank` and the filter families are
/// offered on distributive carriers only.
pub fn finite_families(l: &TableLattice) -> Vec<SemimetricFamily<usize>> {
    let mut out = vec![
        SemimetricFamily::single("discrete", LatticeSemimetric::discrete()),
        SemimetricFamily::single("zero", LatticeSemimetric::zero()),
    ];
    if l.is_distributive() {
        out.push(SemimetricFamily::single("rank", LatticeSemimetric::rank(l)));
        let irr = join_irreducibles(l);
        if let Some(&c) = irr.first() {
            out.push(SemimetricFamily::single(format!("filter:{}", l.label(c)), LatticeSemimetric::filter(l, c)));
        }
        let filters = irr.iter().map(|&c| LatticeSemimetric::filter(l, c)).collect();
        if let Ok(f) = SemimetricFamily::new("filters", filters) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniformity::validate_semimetric;

    #[test]
    fn lookups() {
        let q = lookup("qline").unwrap();
        assert_eq!(q.semimetrics, vec!["abs"]);
        assert!(matches!(q.carrier, Carrier::QLine(_)));
        assert!(matches!(lookup("fincof").unwrap().carrier, Carrier::FinCof(_)));
        let m3 = lookup("m3").unwrap();
        assert!(!m3.carrier.is_distributive());
        assert_eq!(m3.semimetrics, vec!["discrete", "zero"]);
        assert!(matches!(lookup("qvec5").unwrap().carrier, Carrier::QVec(v) if v.dim() == 5));
        assert!(lookup("qvec0").is_err());
        assert!(lookup("nope").is_err());
        let ids: Vec<String> = standard_carriers().into_iter().map(|e| e.id).collect();
        for id in ["powerset4", "chain2", "chain5", "div60", "n5", "c00", "evlin"] {
            assert!(ids.iter().any(|i| i == id), "{id}");
        }
    }

    #[test]
    fn families_are_lattice_semimetrics() {
        for l in finite_carriers() {
            for fam in finite_families(&l) {
                for d in fam.members() {
                    assert!(validate_semimetric(&l, d).is_exact(), "{} {}", l.name(), d.name());
                }
            }
        }
    }

    #[test]
    fn irreducibles() {
        let p3 = TableLattice::powerset(3);
        assert_eq!(join_irreducibles(&p3), vec![0b001, 0b010, 0b100]);
        assert_eq!(join_irreducibles(&TableLattice::chain(4)), vec![1, 2, 3]);
    }
}

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice};
use crate::spaces::TableLattice;

use super::semimetric::{canonical_pairs, ustar_family, LatticeSemimetric, SemimetricFamily};
use super::ExtValue;

/// The zero-distance classes of a family on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRelation {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl KernelRelation {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Every class is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Groups elements by zero distance without checking any axiom.
fn zero_classes(n: usize, zero: impl Fn(usize, usize) -> bool) -> Result<KernelRelation> {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (x..n).filter(|&y| class_of[y] == usize::MAX && zero(x, y)).collect();
        for &y in &members {
            class_of[y] = id;
        }
        classes.push(members);
    }
    for class in &classes {
        for &a in class {
            for &b in class {
                if !zero(a, b) {
                    return Err(Error::CongruenceViolation(format!("zero distance is not transitive at ({a}, {b})")));
                }
            }
        }
    }
    Ok(KernelRelation { classes, class_of })
}

/// Zero-distance partition of a finite carrier, checked to be a congruence
/// for `∨` and `∧`.
pub fn kernel_partition(l: &TableLattice, family: &SemimetricFamily<usize>) -> Result<KernelRelation> {
    let n = l.size();
    let k = zero_classes(n, |x, y| family.all_zero(&x, &y))?;
    for x in 0..n {
        for x2 in k.classes[k.class_of[x]].iter().copied() {
            for y in 0..n {
                for (op, a, b) in [("∨", l.join(&x, &y), l.join(&x2, &y)), ("∧", l.meet(&x, &y), l.meet(&x2, &y))] {
                    if !k.related(a, b) {
                        return Err(Error::CongruenceViolation(format!(
                            "{} ~ {} but {} {op} {} ≁ {} {op} {}",
                            l.label(x),
                            l.label(x2),
                            l.label(x),
                            l.label(y),
                            l.label(x2),
                            l.label(y)
                        )));
                    }
                }
            }
        }
    }
    Ok(k)
}

/// A finite lattice of kernel classes with the induced semimetrics.
#[derive(Debug, Clone)]
pub struct QuotientLattice {
    pub lattice: TableLattice,
    pub family: SemimetricFamily<usize>,
    /// For each class, the original elements it contains.
    pub classes: Vec<Vec<usize>>,
}

impl QuotientLattice {
    /// Whether the induced family separates points.
    pub fn is_hausdorff(&self) -> bool {
        let n = self.lattice.size();
        (0..n).all(|x| (0..n).all(|y| x == y || !self.family.all_zero(&x, &y)))
    }
}

pub fn quotient(
    l: &TableLattice,
    kernel: &KernelRelation,
    family: &SemimetricFamily<usize>,
) -> Result<QuotientLattice> {
    let classes = kernel.classes().to_vec();
    let m = classes.len();
    let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                l.label(c[0]).to_string()
            } else {
                format!("[{}]", c.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    let leq: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| kernel.related(l.meet(&rep[i], &rep[j]), rep[i])).collect()).collect();
    let name = format!("{}/~", l.name());
    let lattice = TableLattice::from_order(&name, labels, &leq)?;

    let mut members = Vec::with_capacity(family.len());
    for d in family.members() {
        let mut table = vec![ExtValue::zero(); m * m];
        for i in 0..m {
            for j in 0..m {
                let v = d.eval(&rep[i], &rep[j]);
                for &x in &classes[i] {
                    for &y in &classes[j] {
                        let w = d.eval(&x, &y);
                        if w != v {
                            return Err(Error::RepresentativeDependence(format!(
                                "{}({}, {}) = {w} but {}({}, {}) = {v}",
                                d.name(),
                                l.label(x),
                                l.label(y),
                                d.name(),
                                l.label(rep[i]),
                                l.label(rep[j])
                            )));
                        }
                    }
                }
                table[i * m + j] = v;
            }
        }
        members.push(LatticeSemimetric::new(d.name(), move |x: &usize, y: &usize| table[x * m + y].clone()));
    }
    let family = SemimetricFamily::new(lattice.name(), members)?;
    Ok(QuotientLattice { lattice, family, classes })
}

/// Both sides of the Hausdorff criterion for `u_{J(S)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhOutcome {
    /// `D` Hausdorff and `x = sup (s ∧ x) = inf (s ∨ x)` for every `x`.
    pub criterion: bool,
    /// The family `{d_{a,b} : (a, b) ∈ J(S)}` separates points.
    pub kernel_hausdorff: bool,
}

impl PhOutcome {
    pub fn agrees(&self) -> bool {
        self.criterion == self.kernel_hausdorff
    }
}

pub fn ph_criterion(l: &TableLattice, s: &[usize], family: &SemimetricFamily<usize>) -> Result<PhOutcome> {
    if !l.is_sublattice(s) {
        let shown: Vec<&str> = s.iter().filter(|&&x| x < l.size()).map(|&x| l.label(x)).collect();
        return Err(Error::NotSublattice(format!("{{{}}}", shown.join(","))));
    }
    let n = l.size();
    let separates = |f: &SemimetricFamily<usize>| (0..n).all(|x| (0..n).all(|y| x == y || !f.all_zero(&x, &y)));
    let hausdorff = separates(family);
    let recovers = (0..n).all(|x| {
        let below: Vec<usize> = s.iter().map(|t| l.meet(t, &x)).collect();
        let above: Vec<usize> = s.iter().map(|t| l.join(t, &x)).collect();
        l.join_all(&below) == Some(x) && l.meet_all(&above) == Some(x)
    });
    let star = ustar_family(l, family, &canonical_pairs(l, s))?;
    Ok(PhOutcome { criterion: hausdorff && recovers, kernel_hausdorff: separates(&star) })
}

/// Closure of `s` in the uniformity generated by `family`: on a finite
/// carrier, the union of the kernel classes meeting `s`.
pub fn kernel_closure(l: &TableLattice, family: &SemimetricFamily<usize>, s: &[usize]) -> Vec<usize> {
    (0..l.size()).filter(|x| s.iter().any(|t| family.all_zero(x, t))).collect()
}

/// Closures of a sublattice `s` under `u` (given by `family`) and under `u*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePair {
    pub u: Vec<usize>,
    pub ustar: Vec<usize>,
}

impl ClosurePair {
    pub fn agrees(&self) -> bool {
        self.u == self.ustar
    }
}

pub fn sublattice_closures(l: &TableLattice, s: &[usize], family: &SemimetricFamily<usize>) -> Result<ClosurePair> {
    if !l.is_sublattice(s) {
        return Err(Error::NotSublattice(format!("{s:?}")));
    }
    let all: Vec<usize> = (0..l.size()).collect();
    let star = ustar_family(l, family, &canonical_pairs(l, &all))?;
    Ok(ClosurePair { u: kernel_closure(l, family, s), ustar: kernel_closure(l, &star, s) })
}

use crate::error::{Error, Result};

use super::{LatticeGroup, TruncationPair};

/// The three sides of `|x−y| ∧ a = |f_{y−a,y}(x) − f_{y−a,y}(y)| + |f_{y,y+a}(x) − f_{y,y+a}(y)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct L5Decomposition<E> {
    /// `|x − y| ∧ a`
    pub lhs: E,
    /// contribution of the truncation onto `[y − a, y]`
    pub low: E,
    /// contribution of the truncation onto `[y, y + a]`
    pub high: E,
}

impl<E: Clone + PartialEq> L5Decomposition<E> {
    /// Whether `lhs = low + high` holds exactly.
    pub fn holds<G: LatticeGroup<Elem = E>>(&self, group: &G) -> bool {
        group.add(&self.low, &self.high) == self.lhs
    }
}

fn require_positive<G: LatticeGroup>(group: &G, a: &G::Elem) -> Result<()> {
    if group.is_positive(a) {
        Ok(())
    } else {
        Err(Error::NotPositive(group.show(a)))
    }
}

fn truncated_gap<G: LatticeGroup>(group: &G, p: &TruncationPair<G::Elem>, x: &G::Elem, y: &G::Elem) -> G::Elem {
    group.abs(&group.sub(&p.f(group, x), &p.f(group, y)))
}

pub fn l5_decompose<G: LatticeGroup>(
    group: &G,
    x: &G::Elem,
    y: &G::Elem,
    a: &G::Elem,
) -> Result<L5Decomposition<G::Elem>> {
    require_positive(group, a)?;
    for e in [x, y] {
        group.check_member(e)?;
    }
    let lhs = group.meet(&group.abs(&group.sub(x, y)), a);
    let below = TruncationPair::new(group, group.sub(y, a), y.clone());
    let above = TruncationPair::new(group, y.clone(), group.add(y, a));
    Ok(L5Decomposition { lhs, low: truncated_gap(group, &below, x, y), high: truncated_gap(group, &above, x, y) })
}

/// `|f_{s,s+a}(x) − f_{s,s+a}(y)| ≤ |x − y| ∧ a`. A `false` means the carrier
/// implementation is broken.
pub fn l5_left_bound<G: LatticeGroup>(group: &G, s: &G::Elem, x: &G::Elem, y: &G::Elem, a: &G::Elem) -> Result<bool> {
    require_positive(group, a)?;
    let p = TruncationPair::new(group, s.clone(), group.add(s, a));
    let gap = truncated_gap(group, &p, x, y);
    let cap = group.meet(&group.abs(&group.sub(x, y)), a);
    Ok(group.leq(&gap, &cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::spaces::{QLine, QVec, RatVec};

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    #[test]
    fn worked_example_in_q2() {
        let g = QVec::new(2);
        let d = l5_decompose(&g, &v(&[3, -1]), &v(&[1, 2]), &v(&[2, 2])).unwrap();
        assert_eq!(d.lhs, v(&[2, 2]));
        assert_eq!(d.low, v(&[0, 2]));
        assert_eq!(d.high, v(&[2, 0]));
        assert!(d.holds(&g));
        assert!(l5_left_bound(&g, &v(&[0, 0]), &v(&[3, -1]), &v(&[1, 2]), &v(&[2, 2])).unwrap());
    }

    #[test]
    fn equal_arguments_give_zero() {
        let g = QVec::new(3);
        let x = v(&[4, -2, 7]);
        let d = l5_decompose(&g, &x, &x, &v(&[1, 5, 0])).unwrap();
        assert_eq!(d.lhs, g.zero());
        assert_eq!(d.low, g.zero());
        assert_eq!(d.high, g.zero());
        assert!(l5_left_bound(&g, &v(&[9, 9, 9]), &x, &x, &v(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn rejects_non_positive_cap() {
        let g = QLine;
        let err = l5_decompose(&g, &int(1), &int(2), &int(-1)).unwrap_err();
        assert!(matches!(err, Error::NotPositive(_)));
        assert!(l5_left_bound(&g, &int(0), &int(1), &int(2), &int(-3)).is_err());
    }

    #[test]
    fn rejects_wrong_dimension() {
        let g = QVec::new(2);
        let err = l5_decompose(&g, &v(&[1, 2, 3]), &v(&[1, 2]), &v(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::ForeignElement { .. }));
    }
}

use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::{FiniteLattice, Lattice};

/// An ordered pair `(a, b)` carrying the truncation `f_{a,b}(x) = (x ∧ b) ∨ a`.
///
/// Pairs with `a ≰ b` are allowed (they arise from composing truncations);
/// `canonical` records whether `a ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPair<E> {
    pub a: E,
    pub b: E,
    canonical: bool,
}

impl<E: Clone + PartialEq> TruncationPair<E> {
    pub fn new<L: Lattice<Elem = E>>(lattice: &L, a: E, b: E) -> Self {
        let canonical = lattice.leq(&a, &b);
        TruncationPair { a, b, canonical }
    }

    /// A pair of `J(L)`; rejects `a ≰ b`.
    pub fn canonical<L: Lattice<Elem = E>>(lattice: &L, a: E, b: E) -> Result<Self> {
        let p = Self::new(lattice, a, b);
        if p.canonical {
            Ok(p)
        } else {
            Err(Error::NonCanonicalPair { a: lattice.show(&p.a), b: lattice.show(&p.b) })
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn f<L: Lattice<Elem = E>>(&self, lattice: &L, x: &E) -> E {
        truncate_f(lattice, self, x)
    }

    pub fn g<L: Lattice<Elem = E>>(&self, lattice: &L, x: &E) -> E {
        truncate_g(lattice, self, x)
    }

    pub fn show<L: Lattice<Elem = E>>(&self, lattice: &L) -> String {
        format!("({}, {})", lattice.show(&self.a), lattice.show(&self.b))
    }
}

/// `(x ∧ b) ∨ a`
pub fn truncate_f<L: Lattice>(lattice: &L, p: &TruncationPair<L::Elem>, x: &L::Elem) -> L::Elem {
    lattice.join(&lattice.meet(x, &p.b), &p.a)
}

/// `(x ∨ a) ∧ b`
pub fn truncate_g<L: Lattice>(lattice: &L, p: &TruncationPair<L::Elem>, x: &L::Elem) -> L::Elem {
    lattice.meet(&lattice.join(x, &p.a), &p.b)
}

/// `f_{a,b} ∘ f_{c,d} = f_{a ∨ (b ∧ c), b ∧ d}` on distributive carriers.
pub fn compose_truncations<L: Lattice>(
    lattice: &L,
    outer: &TruncationPair<L::Elem>,
    inner: &TruncationPair<L::Elem>,
) -> Result<TruncationPair<L::Elem>> {
    if !lattice.is_distributive() {
        return Err(Error::NotDistributive(lattice.name()));
    }
    let a = lattice.join(&outer.a, &lattice.meet(&outer.b, &inner.a));
    let b = lattice.meet(&outer.b, &inner.b);
    Ok(TruncationPair::new(lattice, a, b))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distributivity<E> {
    Distributive,
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`
    Counterexample {
        x: E,
        y: E,
        z: E,
    },
}

impl<E> Distributivity<E> {
    pub fn holds(&self) -> bool {
        matches!(self, Distributivity::Distributive)
    }
}

pub fn check_distributive<L: FiniteLattice>(lattice: &L) -> Distributivity<L::Elem> {
    check_distributive_with(lattice, Exec::default())
}

pub fn check_distributive_with<L: FiniteLattice>(lattice: &L, exec: Exec) -> Distributivity<L::Elem> {
    let els = lattice.elements();
    let n = els.len() as u64;
    let hit = par::find_first(exec, 0..n * n * n, |i| {
        let (x, y, z) = (&els[(i / (n * n)) as usize], &els[(i / n % n) as usize], &els[(i % n) as usize]);
        let lhs = lattice.meet(x, &lattice.join(y, z));
        let rhs = lattice.join(&lattice.meet(x, y), &lattice.meet(x, z));
        (lhs != rhs).then(|| (x.clone(), y.clone(), z.clone()))
    });
    match hit {
        None => Distributivity::Distributive,
        Some((x, y, z)) => Distributivity::Counterexample { x, y, z },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomViolation<E> {
    pub x: E,
    pub y: E,
    pub op: LatticeOp,
}

/// `None` when `f_p` preserves both joins and meets on every pair.
pub fn is_truncation_hom<L: FiniteLattice>(lattice: &L, p: &TruncationPair<L::Elem>) -> Option<HomViolation<L::Elem>> {
    let els = lattice.elements();
    let n = els.len() as u64;
    par::find_first(Exec::default(), 0..n * n, |i| {
        let (x, y) = (&els[(i / n) as usize], &els[(i % n) as usize]);
        let (fx, fy) = (p.f(lattice, x), p.f(lattice, y));
        if p.f(lattice, &lattice.join(x, y)) != lattice.join(&fx, &fy) {
            return Some(HomViolation { x: x.clone(), y: y.clone(), op: LatticeOp::Join });
        }
        if p.f(lattice, &lattice.meet(x, y)) != lattice.meet(&fx, &fy) {
            return Some(HomViolation { x: x.clone(), y: y.clone(), op: LatticeOp::Meet });
        }
        None
    })
}

/// Searches every pair `(a, b)` (canonical or not) for a truncation that is
/// not a lattice homomorphism.
pub fn find_non_homomorphic_truncation<L: FiniteLattice>(
    lattice: &L,
) -> Option<(TruncationPair<L::Elem>, HomViolation<L::Elem>)> {
    let els = lattice.elements();
    for a in &els {
        for b in &els {
            let p = TruncationPair::new(lattice, a.clone(), b.clone());
            if let Some(v) = is_truncation_hom(lattice, &p) {
                return Some((p, v));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositionCounterexample<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub x: E,
}

/// Exhaustively checks `f_{a,b}(f_{c,d}(x)) = f_{a∨(b∧c), b∧d}(x)` over all
/// five-tuples. Returns the first failing tuple.
pub fn verify_composition_law<L: FiniteLattice>(lattice: &L) -> Option<CompositionCounterexample<L::Elem>> {
    verify_composition_law_with(lattice, Exec::default())
}

pub fn verify_composition_law_with<L: FiniteLattice>(
    lattice: &L,
    exec: Exec,
) -> Option<CompositionCounterexample<L::Elem>> {
    let els = lattice.elements();
    let n = els.len() as u64;
    // Outer loop over (a, b, c, d); the inner x loop stays sequential.
    par::find_first(exec, 0..n.pow(4), |i| {
        let idx = |k: u32| &els[(i / n.pow(k) % n) as usize];
        let (a, b, c, d) = (idx(3), idx(2), idx(1), idx(0));
        let outer = TruncationPair::new(lattice, a.clone(), b.clone());
        let inner = TruncationPair::new(lattice, c.clone(), d.clone());
        let composed = TruncationPair::new(lattice, lattice.join(a, &lattice.meet(b, c)), lattice.meet(b, d));
        els.iter().find_map(|x| {
            (outer.f(lattice, &inner.f(lattice, x)) != composed.f(lattice, x)).then(|| CompositionCounterexample {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                d: d.clone(),
                x: x.clone(),
            })
        })
    })
}

/// `a ≤ c ≤ d ≤ b ⇒ f_{c,d} ∘ f_{a,b} = f_{c,d}`; returns a failing
/// `(a, b, c, d, x)` if any.
pub fn verify_interval_nesting<L: FiniteLattice>(lattice: &L) -> Option<CompositionCounterexample<L::Elem>> {
    let els = lattice.elements();
    let n = els.len() as u64;
    par::find_first(Exec::default(), 0..n.pow(4), |i| {
        let idx = |k: u32| &els[(i / n.pow(k) % n) as usize];
        let (a, b, c, d) = (idx(3), idx(2), idx(1), idx(0));
        if !(lattice.leq(a, c) && lattice.leq(c, d) && lattice.leq(d, b)) {
            return None;
        }
        let wide = TruncationPair::new(lattice, a.clone(), b.clone());
        let narrow = TruncationPair::new(lattice, c.clone(), d.clone());
        els.iter().find_map(|x| {
            (narrow.f(lattice, &wide.f(lattice, x)) != narrow.f(lattice, x)).then(|| CompositionCounterexample {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                d: d.clone(),
                x: x.clone(),
            })
        })
    })
}

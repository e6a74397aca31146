//! Contraction bounds for lattice polynomials and truncations.

use rand::{Rng, RngCore};

use crate::lattice::{Lattice, TruncationPair};

use super::{ExtValue, LatticeSemimetric};

/// A lattice polynomial in variables `x_0 … x_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpTree {
    Var(usize),
    Join(Box<OpTree>, Box<OpTree>),
    Meet(Box<OpTree>, Box<OpTree>),
}

impl OpTree {
    /// A random tree of depth at most `depth` over `vars` variables.
    pub fn random<R: RngCore + ?Sized>(rng: &mut R, depth: u32, vars: usize) -> OpTree {
        if depth == 0 || rng.gen_ratio(1, 4) {
            return OpTree::Var(rng.gen_range(0..vars));
        }
        let (l, r) = (Self::random(rng, depth - 1, vars), Self::random(rng, depth - 1, vars));
        if rng.gen_bool(0.5) {
            OpTree::Join(Box::new(l), Box::new(r))
        } else {
            OpTree::Meet(Box::new(l), Box::new(r))
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            OpTree::Var(_) => 0,
            OpTree::Join(a, b) | OpTree::Meet(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of leaves, counted with multiplicity.
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            OpTree::Var(i) => vec![*i],
            OpTree::Join(a, b) | OpTree::Meet(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn eval<L: Lattice>(&self, l: &L, xs: &[L::Elem]) -> L::Elem {
        match self {
            OpTree::Var(i) => xs[*i].clone(),
            OpTree::Join(a, b) => l.join(&a.eval(l, xs), &b.eval(l, xs)),
            OpTree::Meet(a, b) => l.meet(&a.eval(l, xs), &b.eval(l, xs)),
        }
    }
}

/// `d(P(x⃗), P(y⃗)) ≤ Σ_leaves d(x_i, y_i)`; returns both sides.
pub fn operator_bound<L: Lattice>(
    l: &L,
    d: &LatticeSemimetric<L::Elem>,
    tree: &OpTree,
    xs: &[L::Elem],
    ys: &[L::Elem],
) -> (ExtValue, ExtValue)
where
    L::Elem: 'static,
{
    let lhs = d.eval(&tree.eval(l, xs), &tree.eval(l, ys));
    let rhs = tree.leaves().into_iter().map(|i| d.eval(&xs[i], &ys[i])).sum();
    (lhs, rhs)
}

/// `d(f_{a,b} x, f_{a,b} y) ≤ d(f_{c,d} x, f_{c,d} y) + 2 d(a, c) + 2 d(b, d)`;
/// returns both sides.
pub fn truncation_bound<L: Lattice>(
    l: &L,
    d: &LatticeSemimetric<L::Elem>,
    p: &TruncationPair<L::Elem>,
    q: &TruncationPair<L::Elem>,
    x: &L::Elem,
    y: &L::Elem,
) -> (ExtValue, ExtValue)
where
    L::Elem: 'static,
{
    let lhs = d.eval(&p.f(l, x), &p.f(l, y));
    let rhs = d.eval(&q.f(l, x), &q.f(l, y)) + d.eval(&p.a, &q.a).scale(2) + d.eval(&p.b, &q.b).scale(2);
    (lhs, rhs)
}

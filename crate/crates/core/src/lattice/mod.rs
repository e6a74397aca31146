//! Lattice carriers and the algebra of truncation operators.

mod axioms;
mod lgroup;
mod truncation;

use std::fmt::Debug;

use rand::RngCore;

use crate::error::{Error, Result};

pub use axioms::{check_group_axioms_sampled, check_lattice_axioms, check_lattice_axioms_sampled, AxiomViolation};
pub use lgroup::{l5_decompose, l5_left_bound, L5Decomposition};
pub use truncation::{
    check_distributive, check_distributive_with, compose_truncations, find_non_homomorphic_truncation,
    is_truncation_hom, truncate_f, truncate_g, verify_composition_law, verify_composition_law_with,
    verify_interval_nesting, CompositionCounterexample, Distributivity, HomViolation, LatticeOp, TruncationPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierKind {
    FiniteTable,
    Symbolic,
}

/// A lattice carrier. Elements are plain values; the carrier owns the
/// operations and whatever context they need (dimension, tables, ...).
pub trait Lattice: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// `x ≤ y` iff `x ∧ y = x`.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.meet(x, y) == *x
    }

    /// Whether `x` is a well-formed element of this particular carrier
    /// (right dimension, index in range, ...).
    fn contains(&self, _x: &Self::Elem) -> bool {
        true
    }

    fn is_distributive(&self) -> bool;

    fn kind(&self) -> CarrierKind {
        CarrierKind::Symbolic
    }

    fn bottom(&self) -> Option<Self::Elem> {
        None
    }

    fn top(&self) -> Option<Self::Elem> {
        None
    }

    fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    fn show(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    fn check_member(&self, x: &Self::Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement { carrier: self.name(), element: self.show(x) })
        }
    }

    fn checked_meet(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.meet(x, y))
    }

    fn checked_join(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.join(x, y))
    }

    fn checked_leq(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.leq(x, y))
    }

    /// Join of a nonempty slice.
    fn join_all(&self, xs: &[Self::Elem]) -> Option<Self::Elem> {
        let (first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, x| self.join(&acc, x)))
    }

    fn meet_all(&self, xs: &[Self::Elem]) -> Option<Self::Elem> {
        let (first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, x| self.meet(&acc, x)))
    }
}

/// A carrier whose universe can be enumerated.
pub trait FiniteLattice: Lattice {
    fn elements(&self) -> Vec<Self::Elem>;

    fn size(&self) -> usize {
        self.elements().len()
    }

    fn index_of(&self, x: &Self::Elem) -> Option<usize> {
        self.elements().iter().position(|e| e == x)
    }
}

/// A commutative lattice-ordered group.
pub trait LatticeGroup: Lattice {
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// `x⁺ = x ∨ 0`
    fn pos_part(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.zero())
    }

    /// `x⁻ = (-x) ∨ 0`
    fn neg_part(&self, x: &Self::Elem) -> Self::Elem {
        self.join(&self.neg(x), &self.zero())
    }

    /// `|x| = x ∨ (-x)`
    fn abs(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.neg(x))
    }

    fn is_positive(&self, x: &Self::Elem) -> bool {
        self.neg_part(x) == self.zero()
    }
}

/// Seeded random elements for carriers too large to enumerate.
pub trait Sample: Lattice {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn sample_positive(&self, rng: &mut dyn RngCore) -> Self::Elem
    where
        Self: LatticeGroup,
    {
        let x = self.sample(rng);
        self.abs(&x)
    }
}

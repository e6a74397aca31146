use std::fmt::Debug;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{Lattice, TruncationPair};
use crate::symbolic::Proof;

/// Result of asking a carrier for the supremum or infimum of a family.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound<E> {
    Exact(E),
    /// The family has no supremum (infimum) in the carrier.
    NoBound,
    Unknown,
}

/// Whether a described sequence is eventually constant.
#[derive(Debug, Clone, PartialEq)]
pub enum Constancy<E> {
    Constant {
        from: u64,
        value: E,
    },
    /// Not eventually constant; `x_k ≠ x_{k+1}` for infinitely many `k`.
    Never,
    Unknown,
}

/// Which end of an interval a witness family bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// Placeholder for carriers without non-chain witness families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoFamily {}

/// Exact tail reasoning for closed-form sequences on one carrier.
///
/// Every method has a conservative default; carriers override what they can
/// decide.
pub trait OrderOracle: Lattice {
    /// Closed-form description of a sequence `k ↦ x_k`, `k ≥ 1`.
    type Desc: Clone + Debug + Send + Sync;
    /// Directed or filtered witness families that are not chains.
    type Family: Clone + Debug + Send + Sync;

    fn eval_desc(&self, d: &Self::Desc, k: u64) -> Result<Self::Elem>;

    fn const_desc(&self, _x: &Self::Elem) -> Option<Self::Desc> {
        None
    }

    /// The description of `k ↦ x_{k + by}`.
    fn shift_desc(&self, _d: &Self::Desc, _by: i64) -> Option<Self::Desc> {
        None
    }

    /// Decides `lo(k) ≤ hi(k)` for every `k ≥ from`.
    fn prove_leq_from(&self, _lo: &Self::Desc, _hi: &Self::Desc, _from: u64) -> Proof {
        Proof::Unknown
    }

    /// Supremum of `{d(k) : k ≥ from}`, assuming it is increasing there.
    fn chain_sup(&self, _d: &Self::Desc, _from: u64) -> Bound<Self::Elem> {
        Bound::Unknown
    }

    /// Infimum of `{d(k) : k ≥ from}`, assuming it is decreasing there.
    fn chain_inf(&self, _d: &Self::Desc, _from: u64) -> Bound<Self::Elem> {
        Bound::Unknown
    }

    fn eventual_constancy(&self, _d: &Self::Desc) -> Constancy<Self::Elem> {
        Constancy::Unknown
    }

    /// `(from, d')` with `d'(k) = f_p(d(k))` for every `k ≥ from`.
    fn truncated_tail(&self, _d: &Self::Desc, _p: &TruncationPair<Self::Elem>) -> Option<(u64, Self::Desc)> {
        None
    }

    /// Whether O₁-convergence on this carrier is exactly eventual constancy.
    fn o1_is_eventual_constancy(&self) -> bool {
        false
    }

    /// Supremum (lower side) or infimum (upper side) of a witness family.
    fn family_bound(&self, _fam: &Self::Family, _side: Side) -> Bound<Self::Elem> {
        Bound::Unknown
    }

    /// The `j`-th member of an enumeration of the family.
    fn family_member(&self, fam: &Self::Family, j: u64) -> Self::Elem;

    /// First index from which `d(k)` lies on the correct side of `member`.
    fn family_entry(&self, _d: &Self::Desc, _member: &Self::Elem, _side: Side) -> Option<u64> {
        None
    }

    /// Decides whether, for every member `m` of the family, `d(k)` is
    /// eventually on the correct side of `m`.
    fn prove_family_containment(&self, _d: &Self::Desc, _fam: &Self::Family, _side: Side) -> Proof {
        Proof::Unknown
    }
}

//! Uniformities represented by generating families of lattice semimetrics.

mod bounds;
mod entourage;
mod ext;
mod kernel;
mod semimetric;

pub use bounds::{operator_bound, truncation_bound, OpTree};
pub use entourage::{
    composition_case_analysis, composition_counterexample, composition_sampled, integers_closure_certificate,
    real_entourage_compose_check, real_entourage_contains,
};
pub use ext::ExtValue;
pub use kernel::{
    kernel_closure, kernel_partition, ph_criterion, quotient, sublattice_closures, ClosurePair, KernelRelation,
    PhOutcome, QuotientLattice,
};
pub use semimetric::{
    canonical_pairs, derived_semimetric, heights, interval_agreement, ustar_family, validate_semimetric,
    validate_semimetric_sampled, L1Distance, LatticeSemimetric, SemimetricFamily,
};

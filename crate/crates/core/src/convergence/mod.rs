//! Certificate-based convergence oracles for sequences.
//!
//! Nets are restricted to sequences `k ↦ x_k` (`k ≥ 1`) and witnesses to
//! enumerated chains or carrier-provided families. Every check returns a
//! [`Verdict`]; a falsified verdict always carries a reproducible witness.

mod examples;
mod metric;
mod oracle;
mod order;
mod sequence;
mod subnet;
mod verdict;

pub use examples::{unbounded_separation_example, ustar_nonconvergence_on_line, LineNonConvergence, SeparationReport};
pub use metric::{
    default_eps_grid, exhaustivity_probe, line_abs_cauchy_refutation, line_gap_bound, metric_cauchy, metric_converges,
    FamilySpec, MetricCertificate,
};
pub use oracle::{Bound, Constancy, NoFamily, OrderOracle, Side};
pub use order::{
    decide_o1_eventual_constancy, positive_pairs, verify_o1, verify_o2, verify_uo, verify_uo_positives, Eventual, Mode,
    O1Witness, O2Witness, UoWitness, WitnessSide,
};
pub use sequence::Sequence;
pub use subnet::{build_subnet, SubnetEnumeration, SubnetStep};
pub use verdict::{Basis, Status, Verdict, Witness};

/// Default horizon for index-range checks.
pub const DEFAULT_HORIZON: u64 = 10_000;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} does not belong to carrier `{carrier}`")]
    ForeignElement { carrier: String, element: String },

    #[error("carrier `{0}` is not distributive")]
    NotDistributive(String),

    #[error("expected a positive element, got {0}")]
    NotPositive(String),

    #[error("truncation pair ({a}, {b}) is not canonical (a ≰ b)")]
    NonCanonicalPair { a: String, b: String },

    #[error("not a lattice: {x} and {y} have no {missing}")]
    NotALattice { x: String, y: String, missing: &'static str },

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("subset is not a sublattice: {0}")]
    NotSublattice(String),

    #[error("zero-distance relation is not a congruence: {0}")]
    CongruenceViolation(String),

    #[error("induced semimetric depends on class representatives: {0}")]
    RepresentativeDependence(String),

    #[error("invalid distance table: {0}")]
    InvalidDistanceTable(String),

    #[error("witness containment violated for truncation {truncation} at chain step {step}, index {index}")]
    WitnessContainment { truncation: usize, step: u64, index: u64 },

    #[error("operation not supported on carrier `{carrier}`: {what}")]
    Unsupported { carrier: String, what: String },

    #[error("sequence `{0}` is not monotone")]
    NotMonotone(String),

    #[error("term error: {0}")]
    Term(String),

    #[error("parse error: {0}")]
    Parse(String),
}

//! Concrete carriers with exact arithmetic and bound oracles.

mod c00;
mod catalog;
mod evlin;
mod fincof;
mod qline;
mod table;

pub use c00::{C00Desc, C00Vec, C00};
pub use catalog::{
    finite_carriers, finite_families, join_irreducibles, lookup, standard_carriers, Carrier, CatalogEntry,
};
pub use evlin::{EvLin, EvLinSeq};
pub use fincof::{fincof_bound_oracle, Atom, FinCof, FinCofChain, FinCofDesc, FinCofFamily, FinCofSet};
pub use qline::{QLine, QVec, RatVec};
pub use table::{Periodic, TableLattice};

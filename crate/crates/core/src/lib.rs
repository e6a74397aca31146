//! Exact computations with lattice uniformities, truncation operators and
//! order/unbounded convergence.
//!
//! Every carrier works over exact values (big rationals, finite tables or
//! symbolic descriptions); nothing here touches floating point.
//!
//! * [`lattice`]: carrier traits, truncation operators `f_{a,b}` / `g_{a,b}`,
//!   the composition law, distributivity checks and the lattice-group
//!   decomposition of `|x - y| ∧ a`.
//! * [`spaces`]: concrete carriers (finite tables, the finite/cofinite
//!   algebra, rational lines and vectors, `c00`, eventually-linear sequences).
//! * [`uniformity`]: lattice semimetrics, the derived (truncated) families
//!   generating `u_J` and `u*`, kernels, quotients and the real-line base.
//! * [`convergence`]: certificate-based oracles for O1/O2/unbounded/metric
//!   convergence and the subnet construction.
//! * [`symbolic`]: closed-form index terms used for exact tail reasoning.

pub mod convergence;
pub mod error;
pub mod lattice;
pub mod par;
pub mod rational;
pub mod spaces;
pub mod symbolic;
pub mod uniformity;

pub use error::{Error, Result};
pub use rational::Rational;

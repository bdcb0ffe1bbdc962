//! Exact derangement statistics in cosets of normal subgroups of finite
//! permutation groups.
//!
//! The library enumerates small permutation groups completely and computes,
//! in exact integer/rational arithmetic, the fixed-point spectrum of a coset
//! `xG`, the common-orbit counts `r_k` on tuple domains, minimal degree,
//! primitivity, Frobenius and regular-normal-subgroup structure, and a case
//! classification of triples `(A, G, xG)`. A verification suite re-derives
//! every identity and bound from two independent routes (spectrum formulas
//! vs. direct orbit enumeration) and reports a pass/fail verdict per check.
//!
//! Everything is deterministic: element enumeration is breadth-first from the
//! identity with generators applied in list order, orbit representatives are
//! lexicographically least, and scan output ordering is fixed.

pub mod catalog;
pub mod error;
pub mod field;
pub mod group;
pub mod orbits;
pub mod perm;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod structure;
pub mod verify;

pub use error::Error;
pub use group::{Coset, PermGroup};
pub use orbits::{OrbitPartition, TupleDomain};
pub use perm::Permutation;
pub use rational::Rational;
pub use report::{Budgets, TripleReport};
pub use spectrum::CosetSpectrum;
pub use structure::CaseLabel;

/// Convenience result type used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

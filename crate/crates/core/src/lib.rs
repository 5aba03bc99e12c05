//! Holomorphic nilpotent orbits in the classical hermitian Lie algebras:
//! H₁-triples and orbit representatives, (t,u)-classification, dual-pair
//! momentum maps, Lie–Poisson brackets and Jordan invariants.

pub mod classify;
pub mod divalg;
pub mod dualpair;
pub mod error;
pub mod jordan;
pub mod liealg;
pub mod linalg;
pub mod poisson;
pub mod random;
pub mod triples;

pub use error::{OrbitError, Result};

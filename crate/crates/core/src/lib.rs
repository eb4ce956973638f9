//! Workbench for finite inverse monoids.
//!
//! Monoids are dense multiplication tables over `0..n`. On top of that the
//! crate decides the inverse / E-unitary / F-inverse / Clifford hierarchy,
//! builds the extension `E(M) ↪ M ↠ M/σ`, and implements almost semidirect
//! products, relaxed factor systems with their crossed products, and
//! gluings, each checked against a brute-force isomorphism oracle.

pub mod constructions;
pub mod corpus;
pub mod docs;
pub mod error;
pub mod extension;
pub mod inverse;
pub mod iso;
pub mod monoid;
pub mod mtab;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use inverse::{InverseMonoid, SemilatticeMonoid};
pub use iso::IsoWitness;
pub use monoid::{Congruence, FiniteMonoid, MonoidMap};

//! Finite permutation groups at desk scale: block systems, wreath
//! stabilizers, the fractional closure hierarchy (5/2-, 9/8-, 5/4-,
//! 3/2-closed groups), combinatorial objects (digraphs, tuple systems,
//! incidence structures) and Cayley-isomorphism verdicts.
//!
//! Everything is exhaustive and deterministic: element lists are kept in a
//! canonical order, searches report the canonically least witness, and the
//! brute-force routes double as oracles for the structured ones.

pub mod blocks;
pub mod ci;
pub mod closures;
pub mod error;
pub mod group;
pub mod io;
pub mod objects;
pub mod perm;
pub mod sweeps;

pub use error::{Error, Result};
pub use group::{OrbitPartition, PermGroup, DEFAULT_ORDER_CAP};
pub use perm::Permutation;

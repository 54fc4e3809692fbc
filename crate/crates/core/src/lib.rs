//! ECH capacities of the disk cotangent bundles of `S^2` and `RP^2`.
//!
//! The crate computes the capacity sequences in exact `rational * pi^p`
//! arithmetic, rebuilds them from combinatorial chain-complex models,
//! decides capacity obstructions to symplectic embeddings, and numerically
//! reconstructs the moment-map images behind the explicit symplectomorphisms.

pub mod capseq;
pub mod cli;
pub mod error;
pub mod exact;
pub mod momentmap;
pub mod obstruct;
pub mod zollcx;

/// Version tag carried by every JSON document the crate writes.
pub const SCHEMA: &str = "zoll-ech/1";

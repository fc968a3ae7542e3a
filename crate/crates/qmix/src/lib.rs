//! Density-matrix simulation of projective measurement modeled as a unitary
//! system-apparatus interaction.
//!
//! The crate provides the pieces needed to compare, numerically and at high
//! precision, the two textbook descriptions of a quantum measurement:
//! conjugating the joint system-apparatus state by an entangling circuit and
//! tracing out the apparatus, versus applying the projection postulate
//! directly to the system. Scenario runners exercise the standard
//! configurations (pure and mixed inputs, rotated measurement bases,
//! entangled pairs, nested observers), snapshot every intermediate state,
//! and emit machine-checkable reports; analysis routines quantify when two
//! preparations are distinguishable and when they are provably not.

pub mod analysis;
pub mod channels;
pub mod cli;
mod error;
pub mod linalg;
pub mod sampling;
pub mod scenarios;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Exact enumeration of the two-qubit Clifford group.
//!
//! The group is generated from H, P and CZ with entries in Z[ω, 1/√2], so
//! every comparison is exact. On top of the group tables the crate computes
//! the left cosets of the local Clifford group, the graph those cosets form
//! under left multiplication by CZ, and minimal-CZ circuits for every element.

pub mod clifford;
pub mod cyclo;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod matrix;
pub mod orbit;
pub mod synth;
pub mod verify;

pub use clifford::Clifford2;
pub use cyclo::CycloNum;
pub use error::{Error, ParseError, Result};
pub use graph::CzGraph;
pub use group::{GroupTable, LocalTable};
pub use matrix::{gates, GateMatrix};
pub use orbit::{OrbitAtlas, OrbitId};
pub use synth::{Circuit, Synthesizer};

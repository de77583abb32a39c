//! Polyhedral joins of independence complexes: decomposition into wedges of
//! spheres, closed-form sphere counts and a homology oracle to check them.

pub mod betti;
pub mod cli;
pub mod closed_forms;
pub mod complex;
pub mod decomposability;
pub mod engine;
pub mod format;
pub mod graph;
pub mod homology;
pub mod homotopy;
pub mod verify;
pub mod vset;

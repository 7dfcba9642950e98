//! Exact computation with symmetric pairs of matrix groups over small finite fields.
//!
//! The library enumerates a group `G = GL_n(F_q)` together with the fixed
//! subgroup `H` of an involution, partitions `G` into `H`-double cosets,
//! measures the induced anti-involution on the Hecke algebra, decomposes the
//! permutation representation on `G/H` by Dixon's modular method, and checks
//! the resulting multiplicity bounds with exact arithmetic throughout.

pub mod algebra;
pub mod chartab;
pub mod cosets;
pub mod error;
pub mod ff;
pub mod matgrp;
pub mod report;
pub mod sympair;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

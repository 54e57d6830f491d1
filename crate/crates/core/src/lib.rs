//! Enumeration and verification toolkit for pattern-avoiding Fishburn
//! permutations and ascent sequences.
//!
//! The crate is organized bottom-up: [`perm`] and [`sequence`] hold the basic
//! objects, [`bijection`] the map to ascent sequences, [`algebra`] exact
//! polynomial and series arithmetic, [`enumerate`] the generating-tree search,
//! and [`verify`] the registry of checks built on top of them.

pub mod algebra;
pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod perm;
pub mod sequence;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{PatternSpec, Permutation, Restrictiveness};
pub use sequence::IntSequence;

//! Exact combinatorial engine for finite simplicial sets, levelwise-finite
//! simplicial groups, and the bundle theory built on them.
//!
//! Everything is computed on normal forms — no floating point, no sampling,
//! no approximation. Constructions either return certified data or a
//! specific error naming what was missing or violated.

pub mod bisim;
pub mod bundles;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod sset;

pub use error::{Error, Result};

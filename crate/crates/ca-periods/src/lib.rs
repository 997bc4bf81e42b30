//! Exact tooling for temporal periods of periodic solutions of
//! one-dimensional two-neighbor cellular automata: number-theoretic
//! helpers, modular ring arithmetic, additive-rule period formulas, an
//! exact cycle census engine, named rule constructions, and exhaustive
//! search drivers.

pub mod additive;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod modular;
pub mod numtheory;
pub mod search;
pub mod verify;

pub use error::{Error, Result};

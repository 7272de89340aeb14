//! Lattices of submodules over finite commutative rings and finitely generated
//! modules over computable Euclidean domains: primeness, classical primeness,
//! radicals and the classical Hilbert property, plus a law-checking harness.

pub mod classify;
pub mod error;
pub mod euclid;
pub mod finmod;
pub mod json;
pub mod laws;
pub mod limits;
pub mod rings;
pub mod zx;

pub use error::{Error, Result};
pub use limits::Limits;

//! Finitely generated modules over `Z`, `GF(p)[x]` and `Z_(p)`.

pub mod matrix;
pub mod module;
pub mod sampling;

pub use matrix::{echelon, hermite_membership, intersection, smith, Echelon, Matrix, Snf};
pub use module::{
    lambda, radical_of_shape, ClHilbertVerdict, Decomposition, Justification, PresentedModule, PrimePair,
    QuotientShape, RadicalShape, SubmodulePres,
};

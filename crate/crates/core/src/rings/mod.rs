//! Finite commutative rings, their ideals, and the supported Euclidean domains.

pub mod euclidean;
pub mod finite;
pub mod gf;
pub mod ideal;
pub mod spec;

pub use euclidean::{EuclideanDomain, GfPolys, Integers, LocalIntegers};
pub use finite::{Component, Coord, FiniteRing, RingElem};
pub use gf::GfPoly;
pub use ideal::{
    all_ideals, ideal_generated, is_maximal_ideal, is_prime_ideal, jacobson_radical, minimal_primes, nilradical,
    principal, quotient_ring, IdealF, RingQuotient,
};
pub use spec::{parse_ring, parse_ring_with_cells, DomainKind};

/// Finite rings are zero-dimensional, hence Hilbert rings; recorded rather than recomputed.
pub const FINITE_RINGS_ARE_HILBERT: bool = true;

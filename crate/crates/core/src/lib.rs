//! Refined symplectic capacities of four-dimensional convex toric domains.
//!
//! The capacity of a domain with moment polygon `Omega` is the minimum,
//! over admissible multisets of lattice vectors, of the total dual norm
//! (support function) of the word. Everything here is computed in exact
//! arithmetic: arbitrary-precision rationals, optionally extended by one
//! square root for irrational ellipsoid parameters.

pub mod capacities;
pub mod checks;
pub mod geometry;
pub mod grid;
pub mod numeric;
pub mod obstructions;
pub mod words;

pub use capacities::{capacity, CapacityResult, Method};
pub use geometry::{LatticeVector, MomentPolygon};
pub use numeric::{NumericError, Rational, Scalar};
pub use words::{EllBound, OrbitWord};

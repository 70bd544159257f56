//! Exact computations on real hyperplane arrangements: regions and their
//! levels (recession-cone dimensions), centralization, intersection
//! posets, characteristic polynomials, and the combinatorial cone of a
//! geometric semilattice. Two independent routes to the level
//! distribution - direct geometric enumeration and a poset-side formula -
//! are implemented and cross-checked everywhere.
//!
//! All arithmetic is arbitrary-precision rational; every identity in the
//! crate is tested for exact equality, never approximately.

pub mod arrangement;
pub mod atoms;
pub mod families;
pub mod poly;
pub mod posets;
pub mod ratlin;
pub mod regions;
pub mod semilattice;
pub mod verify;

pub use ratlin::Rat;

//! Tits p-indexes of absolutely simple algebraic groups.
//!
//! A Tits index is a Dynkin diagram together with the image of the Galois group
//! in its automorphism group and a set of distinguished (circled) orbits. This
//! crate models those objects, enumerates the indexes that can occur over a
//! `p`-special field for every simple type, translates between invariant
//! profiles (algebra indexes, Witt indexes, degree-3 cohomology classes) and
//! indexes, and evaluates the known closed-form criteria for motivic
//! equivalence mod `p`.
//!
//! Everything here is pure and allocation-only; file formats, the rules-file
//! loader and the command line live in the `tits` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod diagrams;
pub mod equivalence;
mod error;
pub mod index;
pub mod invariants;
pub mod render;

pub use catalog::{Family, RuleSet};
pub use diagrams::{DynkinDiagram, Edge, GaloisAction, Permutation, TypeLabel, Vertex};
pub use error::Error;
pub use index::{TitsIndex, Violation};
pub use invariants::{CohElement, CohGroup, InvariantProfile};

pub type Result<T> = core::result::Result<T, Error>;

//! Hamiltonian cycles up to symmetry.
//!
//! Graph families (products, Cayley graphs of abelian groups, truncations),
//! automorphism groups and canonical forms, Hamiltonian cycle enumeration and
//! counting, Hamiltonian transitivity, Hamilton compression, Cartesian prime
//! factorization and an abelian Cayley graph census.

pub mod abelian;
pub mod canon;
pub mod census;
pub mod construct;
pub mod error;
pub mod factor;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod hamilton;
pub mod perm;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, MAX_VERTICES};
pub use group::PermGroup;
pub use perm::Perm;

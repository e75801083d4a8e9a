//! Generation invariants of finite permutation groups.
//!
//! The crate computes the minimal number of generators `d(G)`, the largest
//! size `m(G)` of an independent (irredundant) generating set, chief series
//! with Frattini and equivalence data, crown-based powers, Eulerian
//! functions and first cohomology over GF(p), and checks the known
//! classification results for groups with `m(G) - d(G) ≤ 1`.

pub mod builder;
pub mod chain;
pub mod cohomology;
pub mod crowns;
pub mod error;
pub mod genset;
pub mod gfp;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod limits;
pub mod perm;
pub mod report;
pub mod structure;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use hom::Homomorphism;
pub use limits::Limits;
pub use perm::Permutation;

//! Exact Clifford theory for finite p-groups inside finite groups.
//!
//! The crate enumerates the irreducible characters of a normal p-subgroup `N`
//! of a finite group `G` through pairs `(H, chi)` of a subgroup and a degree-one
//! character, attaches to each character its stabilisers and cohomological
//! invariants, and assembles representation and twist zeta polynomials from
//! partial series. Every main-path computation has an independent brute-force
//! counterpart in [`oracle`].

pub mod bits;
pub mod characters;
pub mod cohomology;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod format;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod record;
pub mod verify;
pub mod zeta;

pub use cyclotomic::{CycInt, Qz};
pub use error::{Error, Result};
pub use exec::Exec;

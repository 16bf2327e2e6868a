//! Combinatorics of gentle bound quivers.
//!
//! The crate models bound quivers with monomial relations, the string and
//! homotopy-string calculus over their double quivers, perfect complexes of
//! projectives indexed by homotopy strings and bands, the repetitive algebra
//! with its syzygy combinatorics, the combinatorial form of the Happel
//! embedding, and the resulting almost split triangles in the bounded
//! homotopy category of projectives.
//!
//! The crate is `no_std` (with `alloc`); all IO, parsing, and the command
//! line front end live in the companion `gentle-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ar;
pub mod complexes;
pub mod field;
pub mod happel;
pub mod homotopy;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod repetitive;
pub mod walk;

pub use quiver::{ArrowId, BoundQuiver, GentleReport, Path, Sign, StringFunctions, VertexId};
pub use walk::{Letter, SignTable, Walk};

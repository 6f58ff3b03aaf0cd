//! Exact computation in the universal groups `U(F) ≤ Aut(T)` of a legally
//! colored `d`-regular tree.
//!
//! The crate is organised bottom-up:
//!
//! - [`permgroup`]: finite permutation groups `F ≤ Sym(d)` by full enumeration.
//! - [`tree`]: the colored tree as reduced color words, edges, half-trees, ends.
//! - [`element`]: finite-support portraits (a dense subgroup of `U(F)`) and
//!   periodic line translations.
//! - [`dynamics`]: elliptic/inversion/hyperbolic classification, Tits
//!   splitting, contraction groups and related decompositions.
//! - [`orbits`]: orbits of the root stabilizer on spheres.
//! - [`harness`]: executable certificates and the verification suite.
//! - [`cli`]: the `arboru` command-line front end and text formats.

pub mod cli;
pub mod dynamics;
pub mod element;
pub mod harness;
pub mod orbits;
pub mod permgroup;
pub mod tree;

/// A color in `1..=d`.
pub type Color = u8;

/// Largest supported degree. Groups are enumerated in full, so this is a
/// practical bound rather than a hard algorithmic one.
pub const MAX_DEGREE: u8 = 12;

pub use dynamics::ElementClass;
pub use element::{LineElement, Portrait};
pub use permgroup::{Perm, PermGroup};
pub use tree::{EdgeAddr, End, HalfTree, VertexAddr};

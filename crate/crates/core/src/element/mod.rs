//! Tree automorphisms: finite-support portraits and periodic line
//! translations.
//!
//! A [`Portrait`] stores a root image and *relative* local permutations. The
//! local action of `g` at `v` (the permutation sending the color of an edge at
//! `v` to the color of its image at `g(v)`) is
//!
//! ```text
//! τ(x₀) = locals[x₀],    τ(v) = τ(parent(v)) ∘ locals[v]
//! ```
//!
//! with absent entries read as the identity. Every non-root entry must fix the
//! color of the edge from `v` back toward `x₀`; with that single per-entry
//! condition any choice of fields is an automorphism. Beyond its support a
//! portrait repeats the last local action along every ray, so an element lies
//! in `U(F)` exactly when every stored entry lies in `F`.

mod line;
mod portrait;
pub mod random;

use thiserror::Error;

pub use line::{ConjugatedLine, LineElement};
pub use portrait::Portrait;

use crate::permgroup::{Perm, PermGroup};
use crate::tree::{TreeError, VertexAddr};
use crate::{Color, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("degree {0} out of supported range 3..={max}", max = MAX_DEGREE)]
    DegreeOutOfRange(u8),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("local at {vertex} has degree {found}, expected {expected}")]
    PermDegree {
        vertex: VertexAddr,
        expected: u8,
        found: u8,
    },
    #[error("local {perm} at {vertex} does not fix the backward color {color}")]
    BackwardColorMoved {
        vertex: VertexAddr,
        perm: Perm,
        color: Color,
    },
    #[error("line colors must form a cyclically reduced word of length at least 2")]
    BadLineColors,
    #[error("line needs one permutation per period position ({expected}), got {found}")]
    PeriodLength { expected: usize, found: usize },
    #[error("line shift must be even and positive, got {0}")]
    BadShift(usize),
    #[error("permutation at line position {position} does not carry the axis colors forward by the shift")]
    LineConstraint { position: usize },
    #[error("U(F)+ membership needs F transitive and generated by point stabilizers")]
    PlusHypotheses,
    #[error("degree mismatch: element has degree {element}, group has degree {group}")]
    GroupDegree { element: u8, group: u8 },
}

/// Common interface of the automorphism models.
pub trait TreeAutomorphism {
    fn degree(&self) -> u8;

    fn apply(&self, v: &VertexAddr) -> VertexAddr;

    /// Local action at `v`: sends the color of an edge at `v` to the color of
    /// its image edge at `g(v)`.
    fn local_action(&self, v: &VertexAddr) -> Perm;
}

pub(crate) fn check_degree(d: u8) -> Result<(), ElementError> {
    if (3..=MAX_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(ElementError::DegreeOutOfRange(d))
    }
}

/// Gate for the `U(F)⁺` membership test: `U(F)⁺ = U(F) ∩ Aut(T)⁺` needs `F`
/// transitive and generated by its point stabilizers.
pub fn plus_hypotheses_hold(group: &PermGroup) -> bool {
    group.is_transitive() && group.is_generated_by_point_stabilizers()
}

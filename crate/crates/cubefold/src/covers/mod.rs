//! Fundamental-group presentations, finite covers from permutation
//! representations, branched covers at cone points, and finite group actions
//! with stabilizer queries.
//!
//! Universal covers are never materialized: everything is realized at finite
//! degree, which is the honest desk-scale analogue.

mod action;
mod build;
mod complex_trait;
mod presentation;

pub use action::{
    induce_dual_action, verify_stabilizer_lemmas, CheckStatus, GroupAction, Stabilizer,
    StabilizerReport,
};
pub use build::{
    branched_cover, branched_cover_of, build_cover, deck_transformations, BranchPoint,
    CoverProjection,
};
pub use complex_trait::CellComplex;
pub use presentation::{
    perm_from_cycles, pi1_presentation, Abelianization, GroupPresentation, PermRep,
};

use thiserror::Error;

use crate::complex::ComplexError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("complex is disconnected: vertex {0} is unreachable from the basepoint")]
    Disconnected(u32),
    #[error("relator {relator} does not map to the identity permutation")]
    RelatorNotKilled { relator: usize },
    #[error("the permutation representation is not transitive")]
    NotTransitive,
    #[error("invalid permutation data: {0}")]
    BadPermutation(String),
    #[error("generator count {got} does not match the presentation ({want})")]
    GeneratorCountMismatch { got: usize, want: usize },
    #[error("not a covering map: {0}")]
    NotACover(String),
    #[error("unknown cell")]
    UnknownCell,
    #[error("action does not preserve the structure: {0}")]
    ActionNotStructurePreserving(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

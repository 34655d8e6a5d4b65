//! Finite group actions on simplicial complexes of dimension at most 2:
//! first homology, quotient complexes, and the comparison between the
//! coinvariants `H₁(X)_G` and `H₁(X/G)`.

mod action;
mod complex;
mod homology;
pub mod examples;
mod sequence;

use thiserror::Error;

pub use action::{
    close_group, quotient_complex, regularity, ActionRecord, Irregularity, Perm, QuotientComplex, SimplicialAction,
    MAX_GROUP_ORDER,
};
pub use complex::{AbGroup, SimplicialComplex};
pub use homology::HomologySummary;
pub use sequence::{
    coinvariant_surjection_check, exact_sequence_ii_check, CoinvariantReport, ExactSequenceReport, SurjectionVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimquotError {
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u32),
    #[error("simplex {0:?} listed twice")]
    DuplicateSimplex(Vec<u32>),
    #[error("simplex {0:?} has dimension outside 0..=2")]
    BadDimension(Vec<u32>),
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertexInSimplex(Vec<u32>),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("complex is not closed under faces: a face of {0:?} is missing")]
    NotClosed(Vec<u32>),
    #[error("generator {0} is not a permutation of the vertices")]
    NotAPermutation(usize),
    #[error("generator {generator} does not map simplex {simplex:?} to a simplex")]
    NotSimplicial { generator: usize, simplex: Vec<u32> },
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("action still irregular after two barycentric subdivisions: {0:?}")]
    Irregular(Irregularity),
}

#[cfg(test)]
mod tests;

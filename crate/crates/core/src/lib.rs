//! Computational checks for fake projective planes: finite abelian group
//! algebra, Picard-group bookkeeping, vanishing deductions, surface geometry
//! of cyclic quotients, and fundamental groups of simplicial quotients.

pub mod abelian;
pub mod geometry;
pub mod matrix;
pub mod par;
pub mod picard;
pub mod simquot;
pub mod snf;
pub mod suite;
pub mod vanishing;

pub use par::Strategy;

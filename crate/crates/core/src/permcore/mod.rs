//! Permutations on `0..n` and the small amount of permutation-group
//! machinery the rest of the crate relies on.

mod group;
mod perm;

pub use group::{
    centralizer, group_order, is_transitive, orbit, simultaneous_conjugacy, StabilizerChain,
};
pub use perm::{CycleDecomposition, Perm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    RepeatedPoint(usize),
    #[error("permutation syntax: {0}")]
    Parse(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("centralizer search requires transitivity")]
    NotTransitive,
}

//! Concrete group kernels: finite permutation groups, quotients, direct
//! products, and the oracle abstraction the extension machinery plugs
//! into.

pub mod oracle;
pub mod perm;

use thiserror::Error;

use crate::free_groups::WordParseError;

pub use oracle::{
    check_group_laws, direct_product, element_set, trivial_oracle, CyclicWordOracle,
    DirectProduct, Elem, FreeOracle, GroupOracle,
};
pub use perm::{
    derived_subgroup_finite, normal_closure_finite, perm_group, quotient, FiniteQuotient,
    Perm, PermutationGroup, ENUMERATION_BOUND,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("bad cycle notation: `{0}`")]
    BadCycleNotation(String),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("element {0} does not lie in the group")]
    NotInGroup(String),
    #[error("subgroup is not normal: witness {0}")]
    NotNormal(String),
    #[error("group is not enumerable: {0}")]
    NotEnumerable(String),
    #[error(transparent)]
    WordSyntax(WordParseError),
}

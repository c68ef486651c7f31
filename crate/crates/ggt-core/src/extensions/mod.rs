//! Group extensions: HNN extensions with Britton reduction and
//! amalgamated free products with transversal normal forms.

pub mod amalgam;
pub mod filtered_amalgam;
pub mod hnn;

use thiserror::Error;

use crate::group_kernel::KernelError;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("word still admits a pinch; reduce it first")]
    NotReduced,
    #[error("hypothesis x^k in H iff y^k in H fails at exponent {exponent}")]
    HypothesisFailed { exponent: i64 },
    #[error("syllable {0} does not lie in its declared factor")]
    SyllableOutsideFactor(String),
    #[error("transversal representative {0} is not in the coset it claims")]
    BadTransversal(String),
    #[error("amalgam embedding is invalid: {0}")]
    BadEmbedding(String),
    #[error("chain structure is invalid: {0}")]
    BadChain(String),
    #[error(transparent)]
    Kernel(KernelError),
}

pub use amalgam::{
    infinite_order_evidence, quotient_triviality_in_free_product, AmalgamWord,
    AmalgamatedProduct, Factor, OrderVerdict, Syllable,
};
pub use filtered_amalgam::FilteredAmalgam;
pub use hnn::{HnnExtension, HnnWord, TraceStep};

use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Domain errors name the violated precondition; `InternalInconsistency` is
/// reserved for states the mathematics rules out (an exact division leaving a
/// remainder, a non-integer Euler characteristic) and always indicates a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported type {family}{rank}")]
    UnsupportedType { family: char, rank: usize },

    #[error("group too large: order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },

    #[error("expensive type {family}{rank} requires the expensive flag")]
    ExpensiveType { family: char, rank: usize },

    #[error("namespace mismatch: {0}")]
    NamespaceMismatch(String),

    #[error("not symmetric: swapping x{i} and x{}, the polynomial changes", i + 1)]
    NotSymmetric { i: usize },

    #[error("not W-invariant: the weight multiset is not stable under permutations")]
    NotWInvariant,

    #[error("top degree exceeded: degree {degree} is already the top degree {top}")]
    TopDegreeExceeded { degree: usize, top: usize },

    #[error("non-homogeneous element where a homogeneous one is required")]
    NonHomogeneous,

    #[error("hypothesis fails: {0}")]
    InvalidHypothesis(String),

    #[error("invalid parabolic subset: {0}")]
    InvalidParabolic(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

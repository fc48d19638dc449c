//! Exact-arithmetic Schubert calculus for compact flag manifolds.
//!
//! The crate computes in the integral cohomology of flag manifolds `K/H`
//! without ever rounding: root systems and Weyl groups (`rootsys`), sparse
//! integer polynomials with divided-difference operators (`polyring`), the
//! Schubert basis of `H*(K/T)` with Chevalley multiplication
//! (`schubert_basis`), the ring `H*(Sp(k)/U(k))` with its mod-2 Steenrod
//! square (`lag_ring`), Chern-class and Euler-characteristic computations
//! (`charclass`), torsion indices of full flag manifolds (`torsion`), and a
//! rule engine deciding when a point or the diagonal of a flag manifold is
//! the zero locus of a generic section of a complex vector bundle
//! (`verdict`).

pub mod charclass;
pub mod lag_ring;
pub mod polyring;
pub mod rootsys;
pub mod schubert_basis;
pub mod torsion;
pub mod verdict;
mod zlattice;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

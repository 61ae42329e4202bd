//! Exact computation of Terwilliger algebras of Cayley-table association
//! schemes over prime fields.

pub mod algebra;
pub mod cli;
pub mod context;
pub mod error;
pub mod expr;
pub mod field;
pub mod matrix;
pub mod notation;
pub mod scheme;
pub mod structure;
pub mod subspace;
pub mod units;
pub mod verify;

pub use algebra::{closure_generate, t0_basis, AlgebraHandle, StructureConstants};
pub use context::TerwilligerContext;
pub use error::{Error, Result};
pub use expr::AlgExpr;
pub use field::{PrimeModulus, Scalar};
pub use matrix::{nilpotency_index, GfMatrix, SparseRows};
pub use structure::{classify_case, decompose, Case, DecompositionReport};
pub use subspace::SubspaceBasis;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/schemes.md")]
    pub mod schemes {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/registry.md")]
    pub mod registry {}
    #[doc = include_str!("../../../book/src/structure.md")]
    pub mod structure {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

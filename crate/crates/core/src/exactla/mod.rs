//! Exact linear algebra: scalars, matrices, subspaces and tensor-power
//! coordinates.

pub mod bareiss;
pub mod matrix;
pub mod multiindex;
pub mod reduce;
pub mod scalar;
pub mod sparse;
pub mod subspace;

pub use bareiss::{fraction_free_rank, fraction_free_rref};
pub use matrix::Matrix;
pub use reduce::RowReducer;
pub use scalar::{Field, Scalar};
pub use sparse::SparseVec;
pub use subspace::Subspace;

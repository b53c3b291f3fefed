//! Exact computations with Leibniz n-algebras given by structure constants.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactla`]: exact scalars, sparse-row matrices, subspaces, and the
//!   multi-index convention for tensor powers.
//! - [`nalg`]: the algebra type, fundamental-identity validation, ideals,
//!   center, quotients, Lie-ization and the built-in example corpus.
//! - [`functors`]: the forgetful functors `U_n^p` and the
//!   Daletskii-Takhtajan functors `D_q^p`.
//! - [`homology`]: Leibniz chain complexes and the n-ary complexes built
//!   from them.
//! - [`tensoruce`]: non-abelian tensor powers, universal central extensions
//!   and the comparison map between arities.
//! - [`xmod`]: actions and crossed modules in semidirect encoding.
//! - [`textfmt`]: the algebra and crossed-module text formats.
//! - [`regression`]: the built-in regression table over the example corpus.

pub mod budget;
pub mod error;
pub mod exactla;
pub mod functors;
pub mod homology;
pub mod nalg;
pub mod regression;
pub mod tensoruce;
pub mod textfmt;
pub mod xmod;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Scalar, Subspace};
pub use nalg::{Homomorphism, NAlgebra};

//! Leibniz n-algebras: the structure-constant type, the fundamental
//! identity, ideals, center, quotients, Lie-ization and the example corpus.

mod algebra;
pub mod corpus;
pub mod fi;
pub mod ideals;
pub mod liezation;
pub mod quotient;
pub mod trialgebra;

pub use algebra::{Homomorphism, NAlgebra};
pub use fi::{validate_fi, FiFailure, FiReport};
pub use ideals::{
    center, commutator, commutator_ideal, derived_ideal, derived_series, ideal_closure, is_ideal, is_perfect, Commutator,
};
pub use liezation::{liezation, skew_ideal};
pub use quotient::{projection_matrix, quotient, QuotientPresentation};
pub use trialgebra::{from_trialgebra, TrialgebraData};

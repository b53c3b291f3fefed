use thiserror::Error;

/// Errors raised by the library.
///
/// Validation failures (an identity that does not hold) are reported through
/// report types, not through this enum; an `Error` means the request itself
/// could not be carried out.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("incompatible arities: {to} is not of the form k({from}-1)+1 with k >= 1")]
    IncompatibleArities { from: usize, to: usize },

    #[error("subspace is not an n-sided ideal")]
    NotAnIdeal,

    #[error("algebra is not perfect: dim [L^n] = {derived} < dim L = {dim}; a universal central extension exists if and only if the algebra is perfect")]
    NotPerfect { dim: usize, derived: usize },

    #[error("budget exceeded: {required} rows requested, budget is {budget}")]
    BudgetExceeded { required: u128, budget: usize },

    #[error("index out of range: {index} (bound {bound})")]
    OutOfRange { index: usize, bound: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{modulus} is not a prime below 2^31")]
    NonPrimeModulus { modulus: u64 },

    #[error("extension kernel is not central")]
    NotCentral,

    #[error("map is not surjective")]
    NotSurjective,

    #[error("ill-defined construction: {0}")]
    IllDefined(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

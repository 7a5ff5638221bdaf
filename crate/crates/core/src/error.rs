use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field characteristic {0}")]
    InvalidField(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not saturated at L = {0}")]
    NotSaturated(usize),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relations violated: {0}")]
    RelationsViolated(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("undecided: local endomorphism ring could not be certified")]
    Undecided,
    #[error("not special biserial: {0}")]
    NotSpecialBiserial(String),
    #[error("not gentle: {0}")]
    NotGentle(String),
    #[error("d^2 != 0 at degree {0}")]
    DifferentialSquare(i32),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

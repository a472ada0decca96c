use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("non-invertible matrix mod {modulus}: {matrix:?}")]
    NotInvertible { modulus: u64, matrix: [u64; 4] },
    #[error("-I is not in the group; orbit sizes would not be point degrees")]
    MinusIdentityMissing,
    #[error("{0} does not divide {1}")]
    NotDivisible(u64, u64),
    #[error("infeasible size: {0}")]
    Infeasible(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

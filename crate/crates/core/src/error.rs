use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Z[i]")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor} in Z[i]")]
    DivisionNotExact { dividend: String, divisor: String },
    #[error("non-finite entry at index {index}")]
    NonFiniteInput { index: usize },
    #[error("determinant is outside the double-precision range")]
    NonFiniteResult,
    #[error("exact evaluation requires Gaussian-integer entries")]
    DomainMismatch,
    #[error("z must be nonzero")]
    ZeroZ,
    #[error("no closed form is known for z = {0}; only 1, -1, i and -i are supported")]
    UnsupportedZ(String),
    #[error("a circulant matrix needs at least one entry")]
    EmptyRow,
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

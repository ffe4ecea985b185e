use thiserror::Error;

use crate::linalg::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unbounded enumeration: {0}")]
    Unbounded(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid quiver data: {0}")]
    InvalidQuiver(String),

    #[error("relation violated: {0}")]
    RelationViolated(String),

    #[error("invalid sheaf data: {0}")]
    InvalidSheaf(String),

    #[error("truncation bound exceeded: {0}")]
    Truncation(String),

    #[error("not a projective monoid homomorphism: witness ({0}, {1})")]
    NotMonoidHom(usize, usize),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

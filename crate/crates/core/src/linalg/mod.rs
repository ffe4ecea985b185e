//! Exact scalars, dense matrices and bounded cochain complexes.

mod complex;
mod matrix;
mod scalar;

pub use complex::{ChainMap, CochainComplex, Retract};
pub(crate) use matrix::SparseEchelon;
pub use matrix::{random_scalar, Matrix};
pub use scalar::{Field, Scalar};

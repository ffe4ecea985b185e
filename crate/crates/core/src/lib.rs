//! Exact computations with weight quivers, Bondal–Thomsen collections and
//! extended convolution products on toric varieties.

pub mod error;
pub mod invariants;
pub mod quiver;
pub mod linalg;
pub mod algebra;
pub mod bondal_thomsen;
pub mod sheaves;
pub mod toric;

pub use error::{Error, Result};

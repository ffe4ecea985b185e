//! Complexes of line bundles on products of projective spaces, their Čech
//! hypercohomology and the dictionary with quiver representations.

mod beilinson;
mod cech;
mod complex;
mod dictionary;
mod expr;
mod oracle;

pub use beilinson::{BeilinsonKernel, MAX_KERNEL_DIM};
pub use cech::{
    cech_cohomology, cech_cohomology_graded, cech_rep, cech_rgamma, cech_rgamma_with_bound, required_bound, MAX_BOUND,
};
pub use complex::LineBundleComplex;
pub use dictionary::{
    ec_product, ec_product_on, identify_skyscraper, projective_quiver, rep_of_complex, rep_of_sheaf, EcProduct,
    Recognition, Space,
};
pub use expr::{normalize_point, SheafExpr};
pub use oracle::{complex_of_expr, fm_oracle_p1, p1_multiplication_kernel};

//! Fans of smooth complete toric varieties, their Cox grading and line-bundle cohomology.

mod cohomology;
mod fan;
mod grading;
pub mod lattice;
pub mod polytope;

pub use cohomology::{euler_characteristic, line_bundle_cohomology, reduced_cohomology, SupportTable};
pub use fan::{Fan, FanReport};
pub use grading::{cox_grading, CoxGrading, WeightVector};

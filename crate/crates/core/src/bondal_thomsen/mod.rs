//! The floor map on `M_R/M`, its image `Θ`, transparency checks and the induced stratification.

pub mod cells;
mod strata;
mod theta;
mod transparency;

pub use strata::{
    emit_strata_svg, format_weight, is_partial_order, reverse, stratify, transitive_closure, Chamber, Relation,
    Stratification,
};
pub use theta::{floor_map, floor_vector, theta_exact, theta_sampled, ThetaCollection};
pub use transparency::{
    is_bondal_ruan_type, transparency_check, transparency_check_graded, BondalRuanReport, ExtWitness, HomMismatch,
    TransparencyReport,
};

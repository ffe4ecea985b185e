//! K⁰, Picard groups, Balmer primes, the rescaling lemma and skyscraper tables.

mod balmer;
mod k0;
mod pic;
mod rescale;
mod skytable;

pub use balmer::{balmer_primes, verify_balmer_hypotheses, BalmerHypotheses, BalmerPrime};
pub use k0::{class_is_multiplicative, class_of, is_idempotent_diagonal, k0_multiplication_table, K0Class};
pub use pic::{pic_classify, pic_group_order_fp, pic_representative, unit_count_fp, PicElement, ENUMERATION_LIMIT};
pub use rescale::{is_monoid_hom, rescale_monoid_hom};
pub use skytable::{
    projective_points, skyscraper_table, skyscraper_table_direct, table_equivalence, SkyEntry, PGL_SEARCH_LIMIT,
};

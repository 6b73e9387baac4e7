//! r-neighborhoods, their canonical type codes, histograms and the sampling
//! frequency estimator.

mod ball;
mod canon;
mod histogram;
mod registry;
mod sampler;

pub use ball::{ball, ball_via_oracle, default_cap, Ball};
pub use canon::{canonical_form, find_isomorphism, TypeCode};
pub use histogram::{
    align, distribution, histogram, histogram_with, l1_distance, type_codes, DistributionVector,
    HistogramVector,
};
pub use registry::TypeRegistry;
pub use sampler::{distribution_of_sample, estimate_frequencies, estimate_frequencies_into, Estimate};

use crate::error::Result;

/// Canonical code of a ball under the default size cap.
pub fn canonical_code(b: &Ball) -> Result<TypeCode> {
    let cap = default_cap(b.db.schema().max_arity(), b.db.degree_bound(), b.radius);
    canonical_code_capped(b, cap)
}

pub fn canonical_code_capped(b: &Ball, cap: usize) -> Result<TypeCode> {
    ball::check_cap(b, cap)?;
    Ok(canonical_form(&b.db, Some(b.center)))
}

/// Exhaustive check for an isomorphism between the balls mapping center to
/// center.
pub fn rooted_isomorphic(b1: &Ball, b2: &Ball) -> bool {
    find_isomorphism(&b1.db, &b2.db, Some((b1.center, b2.center))).is_some()
}

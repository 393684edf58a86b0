//! Subcommand implementations.

pub mod curvature;
pub mod gauge;
pub mod liouville;
pub mod mesh;
pub mod verify;

use minsurf_core::numerics::ResidualReport;

/// A single-valued check pressed into the report schema: `max_abs` carries
/// the raw measurement, `max_rel` the normalized one, and `mean_abs` mirrors
/// the raw value (there is only one number).
pub fn scalar_report(
    equation: &str,
    h: f64,
    n_valid: usize,
    raw: f64,
    normalized: f64,
) -> ResidualReport {
    ResidualReport {
        equation: equation.to_string(),
        h,
        n_valid,
        max_abs: raw,
        mean_abs: raw,
        max_rel: normalized,
    }
}

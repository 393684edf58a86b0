//! Field-level properties of the residual machinery.

use minsurf_core::expr::HoloFn;
use minsurf_core::geometry::{liouville_density, moebius, MoebiusParams};
use minsurf_core::numerics::{
    residual_liouville, residual_system, GridSpec, ScalarField, SystemForm,
};
use minsurf_core::Complex64;

fn f(text: &str) -> HoloFn {
    HoloFn::parse(text).unwrap()
}

/// Refining the grid never validates a node the coarse grid masked: the
/// coarse nodes are a subset of the refined ones and the pointwise mask is a
/// function of the location alone.
#[test]
fn mask_monotonicity_under_refinement() {
    let w = f("z^2");
    let coarse_grid = GridSpec::square(-1.0, 1.0, 41).unwrap();
    let fine_grid = coarse_grid.refined();
    let density = |g: &GridSpec| ScalarField::sample(g, |z| liouville_density(&w, z).ok()).unwrap();
    let coarse = density(&coarse_grid);
    let fine = density(&fine_grid);
    let mut masked_seen = 0;
    for j in 0..coarse_grid.ny() {
        for i in 0..coarse_grid.nx() {
            if !coarse.is_valid(i, j) {
                masked_seen += 1;
                assert!(
                    !fine.is_valid(2 * i, 2 * j),
                    "refinement validated masked node ({i}, {j})"
                );
            }
        }
    }
    assert!(
        masked_seen > 0,
        "expected the derivative zero to mask a node"
    );
}

/// The density of z and of its gauge transform -1/z agree as fields, so the
/// residual reports agree on a domain where both are regular.
#[test]
fn gauge_transformed_generator_reports_agree() {
    let w = f("z");
    let inv = moebius(
        &w,
        &MoebiusParams::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap(),
    );
    assert_eq!(inv.source(), "(-1 + 0*z)/(0 + 1*z)");
    let grid = GridSpec::new(0.5, 1.5, 0.25, 1.25, 41, 41).unwrap();
    let a = residual_liouville(&w, &grid).unwrap();
    let b = residual_liouville(&inv, &grid).unwrap();
    assert_eq!(a.n_valid, b.n_valid);
    // identical fields up to composition rounding amplified by 1/h^2
    assert!(
        (a.max_abs - b.max_abs).abs() <= 1e-9 + 1e-6 * a.max_abs,
        "{} vs {}",
        a.max_abs,
        b.max_abs
    );
    assert!((a.mean_abs - b.mean_abs).abs() <= 1e-9 + 1e-6 * a.mean_abs);
}

/// Both written forms of the system hold; their residual statistics are
/// close in magnitude but not required equal.
#[test]
fn system_forms_are_equivalent_not_identical() {
    let grid = GridSpec::new(0.5, 1.5, -0.5, 0.5, 51, 51).unwrap();
    let eq1 = residual_system(&f("z"), &f("z^2"), &grid, SystemForm::Eq1).unwrap();
    let eq2 = residual_system(&f("z"), &f("z^2"), &grid, SystemForm::Eq2).unwrap();
    for r in eq1.iter().chain(&eq2) {
        assert!(r.max_rel <= 5e-3, "{}: {}", r.equation, r.max_rel);
    }
    assert_ne!(eq1[0].max_abs, eq2[0].max_abs);
}

/// A density spanning more than twelve decades trips the log-domain floor:
/// the far tail is masked out of the statistics, and the report still
/// certifies the equation in absolute terms on the surviving region. (The
/// relative figure is meaningless here: the density is ~1e-6 everywhere on
/// this domain, so the scale itself is tiny.)
#[test]
fn log_domain_floor_masks_the_tail() {
    let w = f("exp(20*z)");
    let grid = GridSpec::new(0.5, 1.5, -0.5, 0.5, 51, 51).unwrap();
    let full_interior = 49 * 49;
    let r = residual_liouville(&w, &grid).unwrap();
    assert!(r.n_valid > 0);
    assert!(
        r.n_valid < full_interior,
        "n_valid = {} of {full_interior}",
        r.n_valid
    );
    assert!(r.max_abs <= 1e-5, "max_abs = {}", r.max_abs);
}

/// Sampled density extremes for the identity generator match the
/// closed form 4/(1+|z|^2)^2: maximum 4 at the centre, minimum 4/9 at the
/// corners of [-1,1]^2.
#[test]
fn density_extremes_on_the_square() {
    let grid = GridSpec::square(-1.0, 1.0, 101).unwrap();
    let w = f("z");
    let field = ScalarField::sample(&grid, |z| liouville_density(&w, z).ok()).unwrap();
    assert_eq!(field.n_valid(), 101 * 101);
    assert!((field.max() - 4.0).abs() < 1e-12);
    assert!((field.min() - 4.0 / 9.0).abs() < 1e-12);
    assert_eq!(field.get(50, 50), Some(field.max()));
    assert_eq!(field.get(0, 0), Some(field.min()));
}

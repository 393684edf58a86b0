//! Numerical witnesses that a patch is a conformal minimal immersion.

use super::integrate::SurfacePatch;
use super::SurfaceError;

/// Central-difference tangent residuals of conformality.
///
/// Returns `(max | |x_u|^2 - |x_v|^2 |, max |x_u . x_v|)` over valid interior
/// nodes, both normalized by the largest `|x_u|^2`. Rigid translations leave
/// the result unchanged and a global scaling cancels in the normalization.
pub fn conformality_residual(patch: &SurfacePatch) -> Result<(f64, f64), SurfaceError> {
    let grid = *patch.grid();
    let h = grid.h();
    let mut max_iso = 0.0f64;
    let mut max_orth = 0.0f64;
    let mut max_e = 0.0f64;
    let mut seen = false;
    for j in 1..grid.ny().saturating_sub(1) {
        for i in 1..grid.nx().saturating_sub(1) {
            let (Some(xm), Some(xp), Some(ym), Some(yp), Some(_)) = (
                patch.point(i - 1, j),
                patch.point(i + 1, j),
                patch.point(i, j - 1),
                patch.point(i, j + 1),
                patch.point(i, j),
            ) else {
                continue;
            };
            let mut e = 0.0;
            let mut g = 0.0;
            let mut f = 0.0;
            for k in 0..3 {
                let xu = (xp[k] - xm[k]) / (2.0 * h);
                let xv = (yp[k] - ym[k]) / (2.0 * h);
                e += xu * xu;
                g += xv * xv;
                f += xu * xv;
            }
            seen = true;
            max_iso = max_iso.max((e - g).abs());
            max_orth = max_orth.max(f.abs());
            max_e = max_e.max(e);
        }
    }
    if !seen || max_e <= 0.0 {
        return Err(SurfaceError::EmptyField);
    }
    Ok((max_iso / max_e, max_orth / max_e))
}

/// Largest five-point Laplacian of any coordinate over valid interior nodes,
/// normalized by the patch diameter (bounding-box diagonal). In isothermal
/// parameters the coordinates of a minimal surface are harmonic, so this is
/// `O(h^2)` for a genuine patch.
pub fn harmonicity_residual(patch: &SurfacePatch) -> Result<f64, SurfaceError> {
    let grid = *patch.grid();
    let h = grid.h();
    let diameter = patch.bbox_diagonal();
    if diameter <= 0.0 {
        return Err(SurfaceError::EmptyField);
    }
    let mut worst = 0.0f64;
    let mut seen = false;
    for j in 1..grid.ny().saturating_sub(1) {
        for i in 1..grid.nx().saturating_sub(1) {
            let (Some(c), Some(xm), Some(xp), Some(ym), Some(yp)) = (
                patch.point(i, j),
                patch.point(i - 1, j),
                patch.point(i + 1, j),
                patch.point(i, j - 1),
                patch.point(i, j + 1),
            ) else {
                continue;
            };
            seen = true;
            for k in 0..3 {
                let lap = (xm[k] + xp[k] + ym[k] + yp[k] - 4.0 * c[k]) / (h * h);
                worst = worst.max(lap.abs());
            }
        }
    }
    if !seen {
        return Err(SurfaceError::EmptyField);
    }
    Ok(worst / diameter)
}

#[cfg(test)]
mod tests {
    use super::super::integrate::integrate_patch;
    use super::*;
    use crate::expr::HoloFn;
    use crate::numerics::GridSpec;
    use crate::surface::SurfacePatch;
    use num_complex::Complex64;

    fn patch_of(text: &str, n: usize) -> SurfacePatch {
        let grid = GridSpec::square(-1.0, 1.0, n).unwrap();
        integrate_patch(
            &HoloFn::parse(text).unwrap(),
            &grid,
            Complex64::new(0.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn enneper_patch_is_conformal_and_harmonic() {
        let patch = patch_of("z", 101);
        let (iso, orth) = conformality_residual(&patch).unwrap();
        assert!(iso < 5e-3, "isometry residual {iso}");
        assert!(orth < 5e-3, "orthogonality residual {orth}");
        // the coordinates are cubic polynomials here, on which the stencil is
        // exact: the harmonicity residual is rounding, far below the bound
        let harm = harmonicity_residual(&patch).unwrap();
        assert!(harm <= 1e-10, "harmonicity residual {harm}");
    }

    #[test]
    fn conformality_shrinks_at_second_order() {
        let cc = conformality_residual(&patch_of("z", 51)).unwrap();
        let cf = conformality_residual(&patch_of("z", 101)).unwrap();
        let ratio = cc.0 / cf.0;
        assert!((2.5..=6.0).contains(&ratio), "isometry ratio {ratio}");
        let ratio = cc.1 / cf.1;
        assert!((2.5..=6.0).contains(&ratio), "orthogonality ratio {ratio}");
    }

    #[test]
    fn harmonicity_shrinks_at_second_order_for_transcendental_patches() {
        let hc = harmonicity_residual(&patch_of("exp(z)", 51)).unwrap();
        let hf = harmonicity_residual(&patch_of("exp(z)", 101)).unwrap();
        let ratio = hc / hf;
        assert!((2.5..=6.0).contains(&ratio), "harmonicity ratio {ratio}");
    }

    fn synthetic_patch(map: impl Fn([f64; 3]) -> [f64; 3]) -> SurfacePatch {
        // a harmonic but non-conformal graph, u^2 - v^2 over the square
        let grid = GridSpec::square(-1.0, 1.0, 21).unwrap();
        let mut points = Vec::with_capacity(grid.len());
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let z = grid.node(i, j);
                points.push(map([z.re, z.im, z.re * z.re - z.im * z.im]));
            }
        }
        SurfacePatch::from_parts(grid, points, vec![true; grid.len()])
    }

    #[test]
    fn residuals_ignore_rigid_translations() {
        let base = synthetic_patch(|p| p);
        let moved = synthetic_patch(|p| [p[0] + 7.0, p[1] - 3.0, p[2] + 2.0]);
        let (iso_a, orth_a) = conformality_residual(&base).unwrap();
        let (iso_b, orth_b) = conformality_residual(&moved).unwrap();
        assert!((iso_a - iso_b).abs() <= 1e-12 * iso_a.max(1.0));
        assert!((orth_a - orth_b).abs() <= 1e-12 * iso_a.max(1.0));
    }

    #[test]
    fn normalized_residuals_ignore_uniform_scaling() {
        // doubling is exact in binary floating point, so the normalized
        // residuals match bitwise
        let base = synthetic_patch(|p| p);
        let scaled = synthetic_patch(|p| [2.0 * p[0], 2.0 * p[1], 2.0 * p[2]]);
        assert_eq!(
            conformality_residual(&base).unwrap(),
            conformality_residual(&scaled).unwrap()
        );
    }
}

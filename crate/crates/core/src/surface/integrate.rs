//! Integration of the canonical representation into a surface patch.
//!
//! Each coordinate of the patch is the real part of an antiderivative of the
//! corresponding `z_k'`, taken along an axis-aligned staircase from the
//! basepoint (one horizontal leg, then one vertical leg) with the trapezoid
//! rule per segment. Holomorphy makes the result path-independent up to the
//! trapezoid error `O(h^2)`, which [`path_independence_check`] measures
//! instead of assuming.

use super::SurfaceError;
use crate::expr::HoloFn;
use crate::geometry::canonical_derivatives;
use crate::numerics::GridSpec;
use num_complex::Complex64;

/// Grid of points in 3-space obtained by integrating the Weierstrass data.
/// The basepoint maps to the origin; changing the basepoint translates the
/// whole patch rigidly.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    grid: GridSpec,
    points: Vec<[f64; 3]>,
    mask: Vec<bool>,
}

impl SurfacePatch {
    #[cfg(test)]
    pub(crate) fn from_parts(
        grid: GridSpec,
        points: Vec<[f64; 3]>,
        mask: Vec<bool>,
    ) -> SurfacePatch {
        debug_assert_eq!(points.len(), grid.len());
        debug_assert_eq!(mask.len(), grid.len());
        SurfacePatch { grid, points, mask }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.mask[self.grid.idx(i, j)]
    }

    pub fn point(&self, i: usize, j: usize) -> Option<[f64; 3]> {
        let idx = self.grid.idx(i, j);
        self.mask[idx].then(|| self.points[idx])
    }

    pub fn n_valid(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Diagonal of the bounding box of the valid points; the length scale
    /// used to normalize residuals.
    pub fn bbox_diagonal(&self) -> f64 {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for (pt, &m) in self.points.iter().zip(&self.mask) {
            if m {
                for k in 0..3 {
                    lo[k] = lo[k].min(pt[k]);
                    hi[k] = hi[k].max(pt[k]);
                }
            }
        }
        let mut sq = 0.0;
        for k in 0..3 {
            let d = hi[k] - lo[k];
            if d.is_finite() {
                sq += d * d;
            }
        }
        sq.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PathOrder {
    /// Horizontal leg from the basepoint, then vertical.
    RowFirst,
    /// Vertical leg from the basepoint, then horizontal.
    ColumnFirst,
}

/// Integrate the canonical derivatives of `w` from `basepoint` (which must
/// be a grid node) to every node, horizontal leg first.
///
/// Nodes whose staircase crosses a singular node are masked; a singular
/// basepoint blocks every path and is the error case.
pub fn integrate_patch(
    w: &HoloFn,
    grid: &GridSpec,
    basepoint: Complex64,
) -> Result<SurfacePatch, SurfaceError> {
    integrate_with_order(w, grid, basepoint, PathOrder::RowFirst)
}

/// Integrate with both staircase orders and return the largest distance
/// between corresponding points over nodes valid in both patches. Expected
/// `O(h^2)` by holomorphy; on a 1 x n grid the paths coincide and the
/// discrepancy is exactly zero.
pub fn path_independence_check(
    w: &HoloFn,
    grid: &GridSpec,
    basepoint: Complex64,
) -> Result<f64, SurfaceError> {
    let a = integrate_with_order(w, grid, basepoint, PathOrder::RowFirst)?;
    let b = integrate_with_order(w, grid, basepoint, PathOrder::ColumnFirst)?;
    let mut worst = 0.0f64;
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            if let (Some(p), Some(q)) = (a.point(i, j), b.point(i, j)) {
                let d = (0..3).map(|k| (p[k] - q[k]).powi(2)).sum::<f64>().sqrt();
                worst = worst.max(d);
            }
        }
    }
    Ok(worst)
}

pub(crate) fn integrate_with_order(
    w: &HoloFn,
    grid: &GridSpec,
    basepoint: Complex64,
    order: PathOrder,
) -> Result<SurfacePatch, SurfaceError> {
    let (ib, jb) = locate_basepoint(grid, basepoint)?;

    // canonical derivatives at every node; None marks a singular node
    let derivs: Vec<Option<[Complex64; 3]>> = (0..grid.len())
        .map(|idx| {
            let (i, j) = (idx % grid.nx(), idx / grid.nx());
            canonical_derivatives(w, grid.node(i, j)).ok()
        })
        .collect();

    if derivs[grid.idx(ib, jb)].is_none() {
        return Err(SurfaceError::SingularPath {
            at: grid.node(ib, jb),
        });
    }

    let zero = [Complex64::new(0.0, 0.0); 3];
    let mut integral = vec![zero; grid.len()];
    let mut reach = vec![false; grid.len()];
    reach[grid.idx(ib, jb)] = true;

    // trapezoid update along one step of size `step` (a complex increment)
    let accumulate =
        |from: &[Complex64; 3], fa: &[Complex64; 3], fb: &[Complex64; 3], step: Complex64| {
            let mut out = *from;
            for k in 0..3 {
                out[k] += (fa[k] + fb[k]) * 0.5 * step;
            }
            out
        };

    let hx = Complex64::new(grid.hx(), 0.0);
    let hy = Complex64::new(0.0, grid.hy());

    // sweep one line (row jb or column i) outward from the anchor index,
    // then hang the perpendicular lines off every reached node
    let mut sweep = |leading_row: bool| {
        if leading_row {
            // leg 1: row jb
            for dir in [-1i64, 1i64] {
                let mut i = ib as i64;
                loop {
                    let next = i + dir;
                    if next < 0 || next as usize >= grid.nx() {
                        break;
                    }
                    let cur = grid.idx(i as usize, jb);
                    let nxt = grid.idx(next as usize, jb);
                    match (&derivs[cur], &derivs[nxt]) {
                        (Some(fa), Some(fb)) if reach[cur] => {
                            integral[nxt] = accumulate(&integral[cur], fa, fb, hx * dir as f64);
                            reach[nxt] = true;
                        }
                        _ => break,
                    }
                    i = next;
                }
            }
            // leg 2: every column
            for i in 0..grid.nx() {
                if !reach[grid.idx(i, jb)] {
                    continue;
                }
                for dir in [-1i64, 1i64] {
                    let mut j = jb as i64;
                    loop {
                        let next = j + dir;
                        if next < 0 || next as usize >= grid.ny() {
                            break;
                        }
                        let cur = grid.idx(i, j as usize);
                        let nxt = grid.idx(i, next as usize);
                        match (&derivs[cur], &derivs[nxt]) {
                            (Some(fa), Some(fb)) if reach[cur] => {
                                integral[nxt] = accumulate(&integral[cur], fa, fb, hy * dir as f64);
                                reach[nxt] = true;
                            }
                            _ => break,
                        }
                        j = next;
                    }
                }
            }
        } else {
            // leg 1: column ib
            for dir in [-1i64, 1i64] {
                let mut j = jb as i64;
                loop {
                    let next = j + dir;
                    if next < 0 || next as usize >= grid.ny() {
                        break;
                    }
                    let cur = grid.idx(ib, j as usize);
                    let nxt = grid.idx(ib, next as usize);
                    match (&derivs[cur], &derivs[nxt]) {
                        (Some(fa), Some(fb)) if reach[cur] => {
                            integral[nxt] = accumulate(&integral[cur], fa, fb, hy * dir as f64);
                            reach[nxt] = true;
                        }
                        _ => break,
                    }
                    j = next;
                }
            }
            // leg 2: every row
            for j in 0..grid.ny() {
                if !reach[grid.idx(ib, j)] {
                    continue;
                }
                for dir in [-1i64, 1i64] {
                    let mut i = ib as i64;
                    loop {
                        let next = i + dir;
                        if next < 0 || next as usize >= grid.nx() {
                            break;
                        }
                        let cur = grid.idx(i as usize, j);
                        let nxt = grid.idx(next as usize, j);
                        match (&derivs[cur], &derivs[nxt]) {
                            (Some(fa), Some(fb)) if reach[cur] => {
                                integral[nxt] = accumulate(&integral[cur], fa, fb, hx * dir as f64);
                                reach[nxt] = true;
                            }
                            _ => break,
                        }
                        i = next;
                    }
                }
            }
        }
    };
    sweep(order == PathOrder::RowFirst);

    if !reach.iter().any(|&r| r) {
        return Err(SurfaceError::EmptyField);
    }
    let points: Vec<[f64; 3]> = integral
        .iter()
        .map(|c| [c[0].re, c[1].re, c[2].re])
        .collect();
    Ok(SurfacePatch {
        grid: *grid,
        points,
        mask: reach,
    })
}

fn locate_basepoint(grid: &GridSpec, basepoint: Complex64) -> Result<(usize, usize), SurfaceError> {
    let (i, j) = grid.nearest_node(basepoint);
    let node = grid.node(i, j);
    let scale = grid.h().max(1e-300);
    if (node - basepoint).norm() > 1e-6 * scale {
        return Err(SurfaceError::BasepointOffGrid {
            given: basepoint,
            nearest: node,
        });
    }
    Ok((i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> HoloFn {
        HoloFn::parse(text).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basepoint_maps_to_origin() {
        let grid = GridSpec::square(-1.0, 1.0, 11).unwrap();
        let patch = integrate_patch(&f("z"), &grid, c(0.0, 0.0)).unwrap();
        assert_eq!(patch.point(5, 5).unwrap(), [0.0, 0.0, 0.0]);
        assert_eq!(patch.n_valid(), 121);
    }

    #[test]
    fn enneper_spot_vertex() {
        // w = z from basepoint 0: antiderivatives z^3/6 - z/2,
        // -i(z^3/6 + z/2), -z^2/2; at z = 1 the real parts are
        // (-1/3, 0, -1/2)
        let grid = GridSpec::square(-1.0, 1.0, 101).unwrap();
        let patch = integrate_patch(&f("z"), &grid, c(0.0, 0.0)).unwrap();
        let p = patch.point(100, 50).unwrap();
        assert!((p[0] + 1.0 / 3.0).abs() < 1e-3, "x = {}", p[0]);
        assert!(p[1].abs() < 1e-3, "y = {}", p[1]);
        assert!((p[2] + 0.5).abs() < 1e-3, "z = {}", p[2]);
    }

    #[test]
    fn off_grid_basepoint_rejected() {
        let grid = GridSpec::square(-1.0, 1.0, 11).unwrap();
        assert!(matches!(
            integrate_patch(&f("z"), &grid, c(0.05, 0.0)),
            Err(SurfaceError::BasepointOffGrid { .. })
        ));
    }

    #[test]
    fn singular_basepoint_is_an_error() {
        let grid = GridSpec::square(-1.0, 1.0, 11).unwrap();
        let err = integrate_patch(&f("z^2"), &grid, c(0.0, 0.0)).unwrap_err();
        match err {
            SurfaceError::SingularPath { at } => assert_eq!(at, c(0.0, 0.0)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn singular_interior_node_masks_beyond_it() {
        // w = z^2 is singular at the origin; integrate from (1, 0): the
        // leading row is blocked left of 0, and the columns hanging off the
        // blocked part never fill
        let grid = GridSpec::square(-1.0, 1.0, 11).unwrap();
        let patch = integrate_patch(&f("z^2"), &grid, c(1.0, 0.0)).unwrap();
        assert!(patch.is_valid(10, 5));
        assert!(patch.is_valid(6, 5));
        assert!(!patch.is_valid(5, 5), "origin itself is singular");
        assert!(!patch.is_valid(4, 5), "behind the singular node");
        assert!(!patch.is_valid(0, 0), "column off an unreached row node");
        assert!(patch.is_valid(6, 0));
        assert!(patch.n_valid() < 121);
    }

    #[test]
    fn translation_equivariance() {
        let grid = GridSpec::square(-1.0, 1.0, 41).unwrap();
        let a = integrate_patch(&f("z"), &grid, c(0.0, 0.0)).unwrap();
        let b = integrate_patch(&f("z"), &grid, c(0.5, 0.5)).unwrap();
        // difference of corresponding points is one common vector
        let p0 = a.point(0, 0).unwrap();
        let q0 = b.point(0, 0).unwrap();
        let shift = [p0[0] - q0[0], p0[1] - q0[1], p0[2] - q0[2]];
        let h = grid.h();
        for (i, j) in [(3, 7), (20, 20), (40, 0), (11, 33)] {
            let p = a.point(i, j).unwrap();
            let q = b.point(i, j).unwrap();
            for k in 0..3 {
                assert!(
                    (p[k] - q[k] - shift[k]).abs() < h * h,
                    "node ({i},{j}) axis {k}"
                );
            }
        }
    }

    #[test]
    fn path_independence_degenerate_line_grid_is_exact() {
        let grid = GridSpec::new(0.0, 0.0, -1.0, 1.0, 1, 11).unwrap();
        let d = path_independence_check(&f("exp(z)"), &grid, c(0.0, -1.0)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn path_independence_tiny_for_quadratic_integrands() {
        // for w = z the integrands are quadratic: the trapezoid error is the
        // same along both staircase orders, so the discrepancy is rounding
        let grid = GridSpec::square(-1.0, 1.0, 51).unwrap();
        let d = path_independence_check(&f("z"), &grid, c(0.0, 0.0)).unwrap();
        assert!(d <= 1e-12, "discrepancy {d}");
    }

    #[test]
    fn path_independence_second_order() {
        // exp has genuinely path-dependent trapezoid error
        let grid = GridSpec::square(-1.0, 1.0, 51).unwrap();
        let d1 = path_independence_check(&f("exp(z)"), &grid, c(0.0, 0.0)).unwrap();
        let d2 = path_independence_check(&f("exp(z)"), &grid.refined(), c(0.0, 0.0)).unwrap();
        assert!(d1 > 0.0 && d1 <= 1e-3, "coarse discrepancy {d1}");
        let ratio = d1 / d2;
        assert!((3.0..=5.0).contains(&ratio), "ratio = {ratio}");
    }
}

//! Rectangular sample grids in the parameter plane.

use num_complex::Complex64;
use std::fmt;

/// Relative tolerance on `hx == hy`; the five-point stencil is isotropic.
const ANISOTROPY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum GridError {
    ZeroNodes,
    /// `x1 <= x0` (resp. `y1 <= y0`) with more than one node on the axis, or
    /// a nonzero extent with a single node.
    BadRange {
        axis: char,
    },
    NotFinite,
    /// `hx` and `hy` differ beyond tolerance.
    Anisotropic {
        hx: f64,
        hy: f64,
    },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::ZeroNodes => write!(f, "grid must have at least one node per axis"),
            GridError::BadRange { axis } => write!(f, "invalid {axis} range for the node count"),
            GridError::NotFinite => write!(f, "grid bounds must be finite"),
            GridError::Anisotropic { hx, hy } => {
                write!(f, "grid spacing must be square: hx = {hx}, hy = {hy}")
            }
        }
    }
}

impl std::error::Error for GridError {}

/// A rectangle `[x0, x1] x [y0, y1]` sampled at `nx * ny` nodes with equal
/// spacing on both axes.
///
/// Residual statistics need at least 5 nodes per axis (an interior stencil);
/// surface patches and pointwise sampling accept anything down to a single
/// node, in which case the corresponding extent must be zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    nx: usize,
    ny: usize,
}

impl GridSpec {
    pub fn new(
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        nx: usize,
        ny: usize,
    ) -> Result<GridSpec, GridError> {
        if nx == 0 || ny == 0 {
            return Err(GridError::ZeroNodes);
        }
        if ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(GridError::NotFinite);
        }
        if (nx == 1 && x1 != x0) || (nx > 1 && x1 <= x0) {
            return Err(GridError::BadRange { axis: 'x' });
        }
        if (ny == 1 && y1 != y0) || (ny > 1 && y1 <= y0) {
            return Err(GridError::BadRange { axis: 'y' });
        }
        let grid = GridSpec {
            x0,
            x1,
            y0,
            y1,
            nx,
            ny,
        };
        if nx > 1 && ny > 1 {
            let (hx, hy) = (grid.hx(), grid.hy());
            if (hx - hy).abs() > ANISOTROPY_TOL * hx.max(hy) {
                return Err(GridError::Anisotropic { hx, hy });
            }
        }
        Ok(grid)
    }

    /// Square grid over `[lo, hi]^2` with `n` nodes per axis.
    pub fn square(lo: f64, hi: f64, n: usize) -> Result<GridSpec, GridError> {
        GridSpec::new(lo, hi, lo, hi, n, n)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn hx(&self) -> f64 {
        if self.nx > 1 {
            (self.x1 - self.x0) / (self.nx - 1) as f64
        } else {
            0.0
        }
    }

    pub fn hy(&self) -> f64 {
        if self.ny > 1 {
            (self.y1 - self.y0) / (self.ny - 1) as f64
        } else {
            0.0
        }
    }

    /// The common spacing; on degenerate single-node axes the other axis
    /// decides.
    pub fn h(&self) -> f64 {
        if self.nx > 1 {
            self.hx()
        } else {
            self.hy()
        }
    }

    /// Diagonal of the rectangle.
    pub fn diagonal(&self) -> f64 {
        let dx = self.x1 - self.x0;
        let dy = self.y1 - self.y0;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(
            self.x0 + i as f64 * self.hx(),
            self.y0 + j as f64 * self.hy(),
        )
    }

    /// True when `(i, j)` has all four stencil neighbours on the grid.
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i > 0 && j > 0 && i + 1 < self.nx && j + 1 < self.ny
    }

    /// Same rectangle with the spacing halved exactly: every node of `self`
    /// is a node of the refinement (at doubled indices).
    pub fn refined(&self) -> GridSpec {
        let double = |n: usize| if n > 1 { 2 * n - 1 } else { 1 };
        GridSpec {
            x0: self.x0,
            x1: self.x1,
            y0: self.y0,
            y1: self.y1,
            nx: double(self.nx),
            ny: double(self.ny),
        }
    }

    /// Index pair of the node nearest to `z`.
    pub fn nearest_node(&self, z: Complex64) -> (usize, usize) {
        let clamp = |t: f64, n: usize| -> usize {
            if !t.is_finite() || t <= 0.0 {
                0
            } else {
                (t.round() as usize).min(n - 1)
            }
        };
        let i = if self.nx > 1 {
            clamp((z.re - self.x0) / self.hx(), self.nx)
        } else {
            0
        };
        let j = if self.ny > 1 {
            clamp((z.im - self.y0) / self.hy(), self.ny)
        } else {
            0
        };
        (i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_is_square() {
        let g = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 101, 101).unwrap();
        assert_eq!(g.hx(), 0.02);
        assert_eq!(g.hy(), 0.02);
        assert_eq!(g.h(), 0.02);
    }

    #[test]
    fn anisotropic_grids_rejected() {
        let err = GridSpec::new(0.0, 1.0, 0.0, 2.0, 11, 11).unwrap_err();
        assert!(matches!(err, GridError::Anisotropic { .. }));
        // same rectangle, commensurate counts
        assert!(GridSpec::new(0.0, 1.0, 0.0, 2.0, 11, 21).is_ok());
    }

    #[test]
    fn refinement_halves_spacing_exactly_and_keeps_nodes() {
        let g = GridSpec::new(0.5, 1.5, -0.5, 0.5, 51, 51).unwrap();
        let r = g.refined();
        assert_eq!(r.nx(), 101);
        assert_eq!(g.h() / r.h(), 2.0);
        for (i, j) in [(0, 0), (17, 3), (50, 50)] {
            assert_eq!(g.node(i, j), r.node(2 * i, 2 * j));
        }
    }

    #[test]
    fn single_node_axes() {
        let g = GridSpec::new(1.0, 1.0, 0.0, 0.0, 1, 1).unwrap();
        assert_eq!(g.node(0, 0), Complex64::new(1.0, 0.0));
        assert!(GridSpec::new(1.0, 2.0, 0.0, 0.0, 1, 1).is_err());
        // degenerate row: spacing comes from the live axis
        let row = GridSpec::new(0.0, 0.0, -1.0, 1.0, 1, 11).unwrap();
        assert!((row.h() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn nearest_node_clamps_to_grid() {
        let g = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 11, 11).unwrap();
        assert_eq!(g.nearest_node(Complex64::new(0.0, 0.0)), (5, 5));
        assert_eq!(g.nearest_node(Complex64::new(-7.0, 9.0)), (0, 10));
        assert_eq!(g.nearest_node(Complex64::new(0.09, -0.11)), (5, 4));
    }
}

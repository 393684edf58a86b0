//! Minimal-surface patches in 3-space from a single generator.
//!
//! The canonical derivatives of [`crate::geometry::canonical_derivatives`]
//! are integrated along axis-aligned staircases into a [`SurfacePatch`],
//! whose coordinate functions are then checked, not assumed, to be conformal
//! and harmonic. Patches export as ASCII OBJ or PLY meshes.
//!
//! Per-node integrals share prefix sums along grid lines; lines are
//! independent of one another, so per-line accumulation is sequential and
//! lines may be processed concurrently.

mod integrate;
mod mesh;
mod quality;

pub use integrate::{integrate_patch, path_independence_check, SurfacePatch};
pub use mesh::{export_mesh, MeshFormat, MeshStats};
pub use quality::{conformality_residual, harmonicity_residual};

use num_complex::Complex64;
use std::fmt;

#[derive(Debug)]
pub enum SurfaceError {
    /// Integration cannot leave the basepoint: it is itself singular.
    SingularPath {
        at: Complex64,
    },
    /// The requested basepoint does not coincide with a grid node.
    BasepointOffGrid {
        given: Complex64,
        nearest: Complex64,
    },
    /// No valid interior data to measure.
    EmptyField,
    /// Fewer than 2 x 2 nodes, or no valid vertex to export.
    EmptyMesh,
    Io(std::io::Error),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::SingularPath { at } => {
                write!(f, "singular integration path: singular node at z = {at}")
            }
            SurfaceError::BasepointOffGrid { given, nearest } => {
                write!(
                    f,
                    "basepoint {given} is not a grid node (nearest node: {nearest})"
                )
            }
            SurfaceError::EmptyField => write!(f, "empty field: no valid interior data"),
            SurfaceError::EmptyMesh => write!(f, "empty mesh: need a 2 x 2 grid with valid nodes"),
            SurfaceError::Io(e) => write!(f, "write error: {e}"),
        }
    }
}

impl std::error::Error for SurfaceError {}

impl From<std::io::Error> for SurfaceError {
    fn from(e: std::io::Error) -> SurfaceError {
        SurfaceError::Io(e)
    }
}

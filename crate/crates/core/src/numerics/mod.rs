//! Grid sampling, the five-point Laplacian, and PDE residual reports.
//!
//! The Laplacian here is the flat one in the coordinates of the parameter
//! plane of the generating functions; that is the chart in which the
//! closed-form solutions are stated, and the one in which their residuals
//! vanish analytically. Sampling masks singular nodes instead of aborting,
//! and the residual statistics keep a fixed physical standoff from masked
//! nodes (see [`residual::SINGULAR_STANDOFF_FRACTION`]).
//!
//! Field sampling and per-node residual evaluation are independent per node,
//! and report reduction is associative, so callers may parallelize over
//! disjoint index ranges if they wish; the implementation itself is
//! single-threaded and pure.

mod field;
mod grid;
mod residual;

pub use field::ScalarField;
pub use grid::{GridError, GridSpec};
pub use residual::{
    convergence_order, residual_chain, residual_liouville, residual_system, OrderEstimate,
    ResidualReport, SystemForm, LOG_FLOOR_REL, MIN_RESIDUAL_NODES, ROUNDING_FLOOR,
    SINGULAR_STANDOFF_FRACTION,
};

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum NumError {
    /// Every node of a sampled field was masked.
    EmptyField,
    /// A stencil was requested at a boundary node or over masked inputs.
    MaskedStencil { i: usize, j: usize },
    /// Residual statistics need an interior; the grid is too coarse.
    GridTooSmall { nx: usize, ny: usize, need: usize },
    /// Two reports passed to a comparison do not belong together.
    ReportMismatch { reason: String },
}

impl fmt::Display for NumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumError::EmptyField => write!(f, "empty field: every node is masked"),
            NumError::MaskedStencil { i, j } => {
                write!(
                    f,
                    "stencil at node ({i}, {j}) touches a masked or boundary node"
                )
            }
            NumError::GridTooSmall { nx, ny, need } => {
                write!(
                    f,
                    "grid {nx}x{ny} too coarse: residuals need at least {need} nodes per axis"
                )
            }
            NumError::ReportMismatch { reason } => write!(f, "mismatched reports: {reason}"),
        }
    }
}

impl std::error::Error for NumError {}

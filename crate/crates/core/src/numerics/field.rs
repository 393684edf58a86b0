//! Scalar fields on a grid with per-node validity masking.

use super::grid::GridSpec;
use super::NumError;
use num_complex::Complex64;

/// Sampled real values with a validity mask. Masked entries are never read
/// by stencils; a stencil output is valid only when all five inputs are.
#[derive(Debug, Clone)]
pub struct ScalarField {
    grid: GridSpec,
    values: Vec<f64>,
    mask: Vec<bool>,
}

impl ScalarField {
    /// Evaluate `f` at every node. A `None` or non-finite result masks the
    /// node instead of aborting; only a fully masked field is an error.
    pub fn sample(
        grid: &GridSpec,
        f: impl Fn(Complex64) -> Option<f64>,
    ) -> Result<ScalarField, NumError> {
        let mut values = vec![0.0; grid.len()];
        let mut mask = vec![false; grid.len()];
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let idx = grid.idx(i, j);
                if let Some(v) = f(grid.node(i, j)) {
                    if v.is_finite() {
                        values[idx] = v;
                        mask[idx] = true;
                    }
                }
            }
        }
        if mask.iter().any(|&m| m) {
            Ok(ScalarField {
                grid: *grid,
                values,
                mask,
            })
        } else {
            Err(NumError::EmptyField)
        }
    }

    pub(crate) fn from_parts(grid: GridSpec, values: Vec<f64>, mask: Vec<bool>) -> ScalarField {
        debug_assert_eq!(values.len(), grid.len());
        debug_assert_eq!(mask.len(), grid.len());
        ScalarField { grid, values, mask }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.mask[self.grid.idx(i, j)]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let idx = self.grid.idx(i, j);
        self.mask[idx].then(|| self.values[idx])
    }

    pub fn n_valid(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Largest magnitude over valid nodes; 0 for none.
    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| v.abs())
            .fold(0.0, f64::max)
    }

    /// Largest value over valid nodes.
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| *v)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest value over valid nodes.
    pub fn min(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| *v)
            .fold(f64::INFINITY, f64::min)
    }

    /// New field with `op` applied at valid nodes; a `None` or non-finite
    /// image masks the node.
    pub fn map(&self, op: impl Fn(f64) -> Option<f64>) -> ScalarField {
        let mut out = self.clone();
        for idx in 0..out.values.len() {
            if out.mask[idx] {
                match op(out.values[idx]).filter(|v| v.is_finite()) {
                    Some(v) => out.values[idx] = v,
                    None => {
                        out.mask[idx] = false;
                        out.values[idx] = 0.0;
                    }
                }
            }
        }
        out
    }

    /// Five-point Laplacian at an interior node:
    /// `(f[i+1,j] + f[i-1,j] + f[i,j+1] + f[i,j-1] - 4 f[i,j]) / h^2`.
    ///
    /// Exact on polynomials of total degree <= 2 (indeed <= 3); second-order
    /// accurate on smooth fields. All five inputs must be valid.
    pub fn laplacian(&self, i: usize, j: usize) -> Result<f64, NumError> {
        if !self.grid.is_interior(i, j) {
            return Err(NumError::MaskedStencil { i, j });
        }
        let ok = self.is_valid(i, j)
            && self.is_valid(i - 1, j)
            && self.is_valid(i + 1, j)
            && self.is_valid(i, j - 1)
            && self.is_valid(i, j + 1);
        if !ok {
            return Err(NumError::MaskedStencil { i, j });
        }
        let at = |i, j| self.values[self.grid.idx(i, j)];
        let h = self.grid.h();
        Ok((at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) / (h * h))
    }

    /// Whether the full five-point stencil at `(i, j)` is interior and valid.
    pub fn stencil_valid(&self, i: usize, j: usize) -> bool {
        self.grid.is_interior(i, j)
            && self.is_valid(i, j)
            && self.is_valid(i - 1, j)
            && self.is_valid(i + 1, j)
            && self.is_valid(i, j - 1)
            && self.is_valid(i, j + 1)
    }
}

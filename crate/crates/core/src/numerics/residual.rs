//! Residual reports for the curvature PDEs.
//!
//! Every equation handled here has the shape
//!
//! ```text
//! multiplier * lap(log_field) + algebraic = 0
//! ```
//!
//! with `lap` replaced by the five-point stencil. The report's `max_rel` is
//! `max_abs` relative to the largest magnitude of the algebraic part over the
//! points entering the statistics; when that scale vanishes (a degenerate
//! identity such as `kappa == 0`), `max_rel` falls back to the absolute
//! value.
//!
//! Statistics run over interior nodes whose whole stencil is valid, with one
//! refinement: nodes closer than a fixed fraction of the domain diagonal to
//! any masked node are excluded. The stencil's truncation error grows like
//! `h^2 / d^4` at distance `d` from a singular point, so without a standoff
//! the nodes hugging a singularity would dominate every statistic and destroy
//! the second-order convergence the reports are meant to certify. The
//! standoff is a physical length, independent of the grid, which keeps the
//! singular set grid-independent: refining a grid never un-masks a node.

use super::field::ScalarField;
use super::grid::GridSpec;
use super::NumError;
use crate::expr::HoloFn;
use crate::geometry::{
    alpha_beta_from_curvatures, curvatures_from_pq, liouville_density, pq_from_w,
};
use num_complex::Complex64;
use serde::Serialize;

/// Relative floor for logarithm arguments: values below
/// `LOG_FLOOR_REL * max(field)` are masked before taking logs.
pub const LOG_FLOOR_REL: f64 = 1e-12;

/// Exclusion standoff around masked nodes, as a fraction of the domain
/// diagonal. See the module docs.
pub const SINGULAR_STANDOFF_FRACTION: f64 = 0.16;

/// `max_abs` at or below this is considered rounding noise rather than a
/// resolvable residual; convergence orders are not meaningful there.
pub const ROUNDING_FLOOR: f64 = 1e-9;

/// Residual ops need an interior stencil: at least 5 nodes per axis.
pub const MIN_RESIDUAL_NODES: usize = 5;

/// Which written form of the curvature system to verify. Writing `D` for
/// `K^2 - kappa^2` and `s` for `D^(1/4)`:
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemForm {
    /// `s lap ln|kappa - K| = 2(2K - kappa)` and
    /// `s lap ln|kappa + K| = 2(2K + kappa)`.
    Eq1,
    /// `s lap ln(sqrt(D)) = 4K` and
    /// `s lap ln((K - kappa)/(K + kappa)) = -4 kappa`.
    Eq2,
}

/// Summary statistics of one equation's residual on one grid.
///
/// Serializes as
/// `{"equation", "h", "n_valid", "max_abs", "mean_abs", "max_rel"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub h: f64,
    pub n_valid: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub max_rel: f64,
}

/// Empirical convergence order between two reports at spacings `h` and `h/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderEstimate {
    pub order: f64,
    /// Both residuals sit at rounding level; the order is reported as 0 and
    /// should not be range-checked.
    pub below_floor: bool,
}

/// `log2(r_h.max_abs / r_h2.max_abs)`, defined for two reports of the same
/// equation with the spacing exactly halved. Roughly 2 for a satisfied
/// equation.
pub fn convergence_order(
    r_h: &ResidualReport,
    r_h2: &ResidualReport,
) -> Result<OrderEstimate, NumError> {
    if r_h.equation != r_h2.equation {
        return Err(NumError::ReportMismatch {
            reason: format!("equation ids differ: {} vs {}", r_h.equation, r_h2.equation),
        });
    }
    let spacing_halved = r_h.h > 0.0 && (r_h.h / r_h2.h - 2.0).abs() <= 1e-12;
    if !spacing_halved {
        return Err(NumError::ReportMismatch {
            reason: format!("spacings {} and {} are not in ratio 2", r_h.h, r_h2.h),
        });
    }
    if r_h.max_abs <= ROUNDING_FLOOR && r_h2.max_abs <= ROUNDING_FLOOR {
        return Ok(OrderEstimate {
            order: 0.0,
            below_floor: true,
        });
    }
    Ok(OrderEstimate {
        order: (r_h.max_abs / r_h2.max_abs).log2(),
        below_floor: false,
    })
}

/// Residual of the Liouville-type equation `lap ln(nu) + 2 nu = 0` for the
/// density of one generator.
pub fn residual_liouville(w: &HoloFn, grid: &GridSpec) -> Result<ResidualReport, NumError> {
    check_grid(grid)?;
    let nu = ScalarField::sample(grid, |z| liouville_density(w, z).ok())?;
    let nu = floor_mask(&nu);
    let log_field = nu.map(|v| Some(v.ln()));
    let algebraic = nu.map(|v| Some(2.0 * v));
    assemble(
        Equation {
            id: "liouville",
            multiplier: None,
            log_field: &log_field,
            algebraic: &algebraic,
        },
        grid,
    )
}

/// Residuals of the two equations of the chosen form of the curvature
/// system, for the fields generated by `(w1, w2)`.
pub fn residual_system(
    w1: &HoloFn,
    w2: &HoloFn,
    grid: &GridSpec,
    form: SystemForm,
) -> Result<[ResidualReport; 2], NumError> {
    check_grid(grid)?;
    let fields = PairFields::compute(w1, w2, grid)?;
    let mult = fields.quartic_root();
    match form {
        SystemForm::Eq2 => {
            let first = {
                let arg = floor_mask(&fields.discriminant);
                let log_field = arg.map(|v| Some(0.5 * v.ln()));
                let algebraic = fields.k.map(|v| Some(-4.0 * v));
                assemble(
                    Equation {
                        id: "eq2.magnitude",
                        multiplier: Some(&mult),
                        log_field: &log_field,
                        algebraic: &algebraic,
                    },
                    grid,
                )?
            };
            let second = {
                let log_field = fields.curvature_ratio().map(|v| Some(v.ln()));
                let algebraic = fields.kappa.map(|v| Some(4.0 * v));
                assemble(
                    Equation {
                        id: "eq2.ratio",
                        multiplier: Some(&mult),
                        log_field: &log_field,
                        algebraic: &algebraic,
                    },
                    grid,
                )?
            };
            Ok([first, second])
        }
        SystemForm::Eq1 => {
            let diff = {
                let arg = floor_mask(&zip(&fields.k, &fields.kappa, |k, kp| (kp - k).abs()));
                let log_field = arg.map(|v| Some(v.ln()));
                let algebraic = zip(&fields.k, &fields.kappa, |k, kp| -2.0 * (2.0 * k - kp));
                assemble(
                    Equation {
                        id: "eq1.diff",
                        multiplier: Some(&mult),
                        log_field: &log_field,
                        algebraic: &algebraic,
                    },
                    grid,
                )?
            };
            let sum = {
                let arg = floor_mask(&zip(&fields.k, &fields.kappa, |k, kp| (kp + k).abs()));
                let log_field = arg.map(|v| Some(v.ln()));
                let algebraic = zip(&fields.k, &fields.kappa, |k, kp| -2.0 * (2.0 * k + kp));
                assemble(
                    Equation {
                        id: "eq1.sum",
                        multiplier: Some(&mult),
                        log_field: &log_field,
                        algebraic: &algebraic,
                    },
                    grid,
                )?
            };
            Ok([diff, sum])
        }
    }
}

/// Residuals of every intermediate form between the curvature system and the
/// two Liouville-type equations: the `alpha/beta` pair, the squared `p, q`
/// pair, and `p, q` themselves. Six reports.
pub fn residual_chain(
    w1: &HoloFn,
    w2: &HoloFn,
    grid: &GridSpec,
) -> Result<Vec<ResidualReport>, NumError> {
    check_grid(grid)?;
    let fields = PairFields::compute(w1, w2, grid)?;
    let mut out = Vec::with_capacity(6);

    // 2 sqrt(ab) lap ln(ab) + 8(a^2+b^2) = 0
    let mult = zip(&fields.alpha, &fields.beta, |a, b| 2.0 * (a * b).sqrt());
    {
        let arg = floor_mask(&zip(&fields.alpha, &fields.beta, |a, b| a * b));
        let log_field = arg.map(|v| Some(v.ln()));
        let algebraic = zip(&fields.alpha, &fields.beta, |a, b| 8.0 * (a * a + b * b));
        out.push(assemble(
            Equation {
                id: "chain.alpha_beta.product",
                multiplier: Some(&mult),
                log_field: &log_field,
                algebraic: &algebraic,
            },
            grid,
        )?);
    }
    // 2 sqrt(ab) lap ln(a/b) + 4(a^2-b^2) = 0
    {
        let arg = floor_mask(&zip(&fields.alpha, &fields.beta, |a, b| a / b));
        let log_field = arg.map(|v| Some(v.ln()));
        let algebraic = zip(&fields.alpha, &fields.beta, |a, b| 4.0 * (a * a - b * b));
        out.push(assemble(
            Equation {
                id: "chain.alpha_beta.ratio",
                multiplier: Some(&mult),
                log_field: &log_field,
                algebraic: &algebraic,
            },
            grid,
        )?);
    }
    // lap ln(4a^3/b) + 4 sqrt(4a^3/b) = 0 and its alpha <-> beta mirror
    for (id, num, den) in [
        ("chain.p_squared", &fields.alpha, &fields.beta),
        ("chain.q_squared", &fields.beta, &fields.alpha),
    ] {
        let arg = floor_mask(&zip(num, den, |n, d| 4.0 * n * n * n / d));
        let log_field = arg.map(|v| Some(v.ln()));
        let algebraic = arg.map(|v| Some(4.0 * v.sqrt()));
        out.push(assemble(
            Equation {
                id,
                multiplier: None,
                log_field: &log_field,
                algebraic: &algebraic,
            },
            grid,
        )?);
    }
    // lap ln p + 2p = 0 and lap ln q + 2q = 0
    for (id, field) in [("chain.p", &fields.p), ("chain.q", &fields.q)] {
        let arg = floor_mask(field);
        let log_field = arg.map(|v| Some(v.ln()));
        let algebraic = arg.map(|v| Some(2.0 * v));
        out.push(assemble(
            Equation {
                id,
                multiplier: None,
                log_field: &log_field,
                algebraic: &algebraic,
            },
            grid,
        )?);
    }
    Ok(out)
}

/// All pointwise fields derived from a generator pair, on a common mask.
struct PairFields {
    p: ScalarField,
    q: ScalarField,
    k: ScalarField,
    kappa: ScalarField,
    alpha: ScalarField,
    beta: ScalarField,
    discriminant: ScalarField,
}

impl PairFields {
    /// One generator-evaluation pass per node; every derived quantity shares
    /// the resulting mask.
    fn compute(w1: &HoloFn, w2: &HoloFn, grid: &GridSpec) -> Result<PairFields, NumError> {
        let n = grid.len();
        let mut cols: [Vec<f64>; 7] = std::array::from_fn(|_| vec![0.0; n]);
        let mut mask = vec![false; n];
        let mut any = false;
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let Ok(pq) = pq_from_w(w1, w2, grid.node(i, j)) else {
                    continue;
                };
                let cv = curvatures_from_pq(pq);
                let Ok(ab) = alpha_beta_from_curvatures(cv) else {
                    continue;
                };
                let idx = grid.idx(i, j);
                let row = [
                    pq.p,
                    pq.q,
                    cv.k,
                    cv.kappa,
                    ab.alpha,
                    ab.beta,
                    cv.k * cv.k - cv.kappa * cv.kappa,
                ];
                if row.iter().all(|v| v.is_finite()) {
                    for (col, v) in cols.iter_mut().zip(row) {
                        col[idx] = v;
                    }
                    mask[idx] = true;
                    any = true;
                }
            }
        }
        if !any {
            return Err(NumError::EmptyField);
        }
        let [p, q, k, kappa, alpha, beta, discriminant] =
            cols.map(|values| ScalarField::from_parts(*grid, values, mask.clone()));
        Ok(PairFields {
            p,
            q,
            k,
            kappa,
            alpha,
            beta,
            discriminant,
        })
    }

    /// `(K^2 - kappa^2)^(1/4)`, the multiplier of both system forms.
    fn quartic_root(&self) -> ScalarField {
        floor_mask(&self.discriminant).map(|v| Some(v.powf(0.25)))
    }

    /// `(K - kappa)/(K + kappa)`, positive on the admissible range, with the
    /// log-domain floor applied to both numerator and denominator magnitudes.
    fn curvature_ratio(&self) -> ScalarField {
        let num = floor_mask(&zip(&self.k, &self.kappa, |k, kp| k - kp).map(|v| Some(v.abs())));
        let den = floor_mask(&zip(&self.k, &self.kappa, |k, kp| k + kp).map(|v| Some(v.abs())));
        zip2_opt(&num, &den, |n, d| {
            let r = n / d;
            (r > 0.0).then_some(r)
        })
    }
}

/// Pointwise combination of two fields on the intersection of their masks.
fn zip(a: &ScalarField, b: &ScalarField, op: impl Fn(f64, f64) -> f64) -> ScalarField {
    zip2_opt(a, b, |x, y| Some(op(x, y)))
}

fn zip2_opt(a: &ScalarField, b: &ScalarField, op: impl Fn(f64, f64) -> Option<f64>) -> ScalarField {
    debug_assert_eq!(a.grid(), b.grid());
    let grid = *a.grid();
    let mut values = vec![0.0; grid.len()];
    let mut mask = vec![false; grid.len()];
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let idx = grid.idx(i, j);
            if let (Some(x), Some(y)) = (a.get(i, j), b.get(i, j)) {
                if let Some(v) = op(x, y).filter(|v| v.is_finite()) {
                    values[idx] = v;
                    mask[idx] = true;
                }
            }
        }
    }
    ScalarField::from_parts(grid, values, mask)
}

/// Mask entries below `LOG_FLOOR_REL` times the field maximum (and any
/// non-positive entries), so logarithms stay well defined.
fn floor_mask(field: &ScalarField) -> ScalarField {
    let floor = LOG_FLOOR_REL * field.max_abs();
    field.map(|v| (v > floor).then_some(v))
}

struct Equation<'a> {
    id: &'a str,
    multiplier: Option<&'a ScalarField>,
    log_field: &'a ScalarField,
    algebraic: &'a ScalarField,
}

fn check_grid(grid: &GridSpec) -> Result<(), NumError> {
    if grid.nx() < MIN_RESIDUAL_NODES || grid.ny() < MIN_RESIDUAL_NODES {
        Err(NumError::GridTooSmall {
            nx: grid.nx(),
            ny: grid.ny(),
            need: MIN_RESIDUAL_NODES,
        })
    } else {
        Ok(())
    }
}

fn assemble(eq: Equation<'_>, grid: &GridSpec) -> Result<ResidualReport, NumError> {
    // Nodes invalid in any participating field seed the exclusion zones.
    let mut seeds: Vec<Complex64> = Vec::new();
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let bad = !eq.log_field.is_valid(i, j)
                || !eq.algebraic.is_valid(i, j)
                || eq.multiplier.is_some_and(|m| !m.is_valid(i, j));
            if bad {
                seeds.push(grid.node(i, j));
            }
        }
    }
    let standoff = SINGULAR_STANDOFF_FRACTION * grid.diagonal();
    let standoff_sq = standoff * standoff;
    let clear = |z: Complex64| seeds.iter().all(|s| (z - s).norm_sqr() >= standoff_sq);

    let mut n_valid = 0usize;
    let mut max_abs = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut scale = 0.0f64;
    for j in 1..grid.ny() - 1 {
        for i in 1..grid.nx() - 1 {
            if !eq.log_field.stencil_valid(i, j) {
                continue;
            }
            let Some(alg) = eq.algebraic.get(i, j) else {
                continue;
            };
            let mult = match eq.multiplier {
                Some(m) => match m.get(i, j) {
                    Some(v) => v,
                    None => continue,
                },
                None => 1.0,
            };
            if !seeds.is_empty() && !clear(grid.node(i, j)) {
                continue;
            }
            let lap = eq.log_field.laplacian(i, j).expect("stencil checked valid");
            let r = (mult * lap + alg).abs();
            n_valid += 1;
            max_abs = max_abs.max(r);
            sum_abs += r;
            scale = scale.max(alg.abs());
        }
    }
    if n_valid == 0 {
        return Err(NumError::EmptyField);
    }
    let max_rel = if scale > 0.0 {
        max_abs / scale
    } else {
        max_abs
    };
    Ok(ResidualReport {
        equation: eq.id.to_string(),
        h: grid.h(),
        n_valid,
        max_abs,
        mean_abs: sum_abs / n_valid as f64,
        max_rel,
    })
}

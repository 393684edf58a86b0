use crate::args::{build_grid, parse_expr, LiouvilleArgs};
use crate::error::CliError;
use crate::report::{emit, order_ok, Meta, Report};
use minsurf_core::numerics::{convergence_order, residual_liouville, MIN_RESIDUAL_NODES};
use serde_json::json;

/// Residuals of the Liouville-type equation at h and h/2 with the empirical
/// convergence order; passes when the order is second and the base-grid
/// relative residual is within tolerance.
pub fn run(args: LiouvilleArgs) -> Result<bool, CliError> {
    let w = parse_expr("w", &args.w)?;
    let grid = build_grid(&args.domain, MIN_RESIDUAL_NODES)?;
    let coarse = residual_liouville(&w, &grid)?;
    let fine = residual_liouville(&w, &grid.refined())?;
    let est = convergence_order(&coarse, &fine)?;
    let pass = order_ok(est) && coarse.max_rel <= args.tol;

    let mut meta = Meta::new();
    meta.push_order(&coarse.equation, est);
    let report = Report {
        command: "liouville",
        config: json!({
            "w": args.w,
            "domain": [grid.x0(), grid.x1(), grid.y0(), grid.y1()],
            "nx": grid.nx(),
            "ny": grid.ny(),
            "h": grid.h(),
            "tol": args.tol,
        }),
        reports: vec![coarse, fine],
        pass,
        meta,
    };
    emit(&report, &args.out)?;
    Ok(pass)
}

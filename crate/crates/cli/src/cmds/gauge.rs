use crate::args::{build_grid, parse_expr, parse_gauge_pair, GaugeArgs};
use crate::cmds::scalar_report;
use crate::error::CliError;
use crate::report::{emit, Meta, Report};
use minsurf_core::expr::HoloFn;
use minsurf_core::geometry::{curvature_pair, liouville_density, moebius};
use minsurf_core::numerics::{GridSpec, ResidualReport};
use minsurf_core::Complex64;
use serde_json::json;

/// Maximum deviation between a field and its gauge-transformed counterpart
/// over the region where both are regular; passes when the relative
/// deviation stays within tolerance (1e-9 by default).
pub fn run(args: GaugeArgs) -> Result<bool, CliError> {
    let grid = build_grid(&args.domain, 2)?;
    let single = args.w.is_some();
    let paired = args.w1.is_some() || args.w2.is_some();
    if single == paired {
        return Err(CliError::Parse(
            "gauge needs either --w with --a/--b, or --w1/--w2 with --a1/--b1/--a2/--b2".into(),
        ));
    }

    let (reports, config) = if single {
        let (Some(a_text), Some(b_text)) = (&args.a, &args.b) else {
            return Err(CliError::Parse("--w requires both --a and --b".into()));
        };
        let w = parse_expr("w", args.w.as_deref().unwrap())?;
        let m = parse_gauge_pair("a", a_text, "b", b_text, args.renormalize)?;
        let hat = moebius(&w, &m);
        let density = deviation(&grid, "gauge.density", None, |z| {
            Some((
                liouville_density(&w, z).ok()?,
                liouville_density(&hat, z).ok()?,
            ))
        })?;
        let config = json!({
            "w": args.w,
            "a": a_text,
            "b": b_text,
            "transformed": hat.source(),
            "renormalize": args.renormalize,
            "domain": [grid.x0(), grid.x1(), grid.y0(), grid.y1()],
            "nx": grid.nx(),
            "ny": grid.ny(),
            "tol": args.tol,
        });
        (vec![density], config)
    } else {
        let (Some(w1_text), Some(w2_text)) = (&args.w1, &args.w2) else {
            return Err(CliError::Parse(
                "pair mode requires both --w1 and --w2".into(),
            ));
        };
        let missing = [&args.a1, &args.b1, &args.a2, &args.b2]
            .iter()
            .any(|o| o.is_none());
        if missing {
            return Err(CliError::Parse(
                "pair mode requires --a1, --b1, --a2 and --b2".into(),
            ));
        }
        let w1 = parse_expr("w1", w1_text)?;
        let w2 = parse_expr("w2", w2_text)?;
        let m1 = parse_gauge_pair(
            "a1",
            args.a1.as_deref().unwrap(),
            "b1",
            args.b1.as_deref().unwrap(),
            args.renormalize,
        )?;
        let m2 = parse_gauge_pair(
            "a2",
            args.a2.as_deref().unwrap(),
            "b2",
            args.b2.as_deref().unwrap(),
            args.renormalize,
        )?;
        let h1 = moebius(&w1, &m1);
        let h2 = moebius(&w2, &m2);
        // both curvatures normalized by the Gauss curvature scale, which
        // dominates: K^2 > kappa^2
        let gauss = deviation(&grid, "gauge.gauss", None, |z| {
            Some((
                curvature_pair(&w1, &w2, z).ok()?.k,
                curvature_pair(&h1, &h2, z).ok()?.k,
            ))
        })?;
        let normal = deviation(
            &grid,
            "gauge.normal",
            Some(gauss_scale(&grid, &w1, &w2)),
            |z| {
                Some((
                    curvature_pair(&w1, &w2, z).ok()?.kappa,
                    curvature_pair(&h1, &h2, z).ok()?.kappa,
                ))
            },
        )?;
        let config = json!({
            "w1": args.w1,
            "w2": args.w2,
            "a1": args.a1,
            "b1": args.b1,
            "a2": args.a2,
            "b2": args.b2,
            "renormalize": args.renormalize,
            "domain": [grid.x0(), grid.x1(), grid.y0(), grid.y1()],
            "nx": grid.nx(),
            "ny": grid.ny(),
            "tol": args.tol,
        });
        (vec![gauss, normal], config)
    };

    let pass = reports.iter().all(|r| r.max_rel <= args.tol);
    let report = Report {
        command: "gauge",
        config,
        reports,
        pass,
        meta: Meta::new(),
    };
    emit(&report, &args.out)?;
    Ok(pass)
}

/// Largest |original - transformed| over nodes where both evaluate,
/// normalized by `fixed_scale` when given (the normal-curvature field can
/// vanish identically) and by the largest |original| otherwise.
fn deviation(
    grid: &GridSpec,
    equation: &str,
    fixed_scale: Option<f64>,
    field: impl Fn(Complex64) -> Option<(f64, f64)>,
) -> Result<ResidualReport, CliError> {
    let mut n_valid = 0usize;
    let mut max_abs = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut max_orig = 0.0f64;
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let Some((orig, hat)) = field(grid.node(i, j)) else {
                continue;
            };
            n_valid += 1;
            let d = (orig - hat).abs();
            max_abs = max_abs.max(d);
            sum_abs += d;
            max_orig = max_orig.max(orig.abs());
        }
    }
    if n_valid == 0 {
        return Err(CliError::EmptyField(format!(
            "{equation}: no node where both the original and transformed fields evaluate"
        )));
    }
    let scale = fixed_scale.unwrap_or(max_orig);
    let max_rel = if scale > 0.0 {
        max_abs / scale
    } else {
        max_abs
    };
    let mut r = scalar_report(equation, grid.h(), n_valid, max_abs, max_rel);
    r.mean_abs = sum_abs / n_valid as f64;
    Ok(r)
}

/// The Gauss-curvature magnitude over the grid, as the common normalization.
fn gauss_scale(grid: &GridSpec, w1: &HoloFn, w2: &HoloFn) -> f64 {
    let mut scale = 0.0f64;
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            if let Ok(c) = curvature_pair(w1, w2, grid.node(i, j)) {
                scale = scale.max(c.k.abs());
            }
        }
    }
    scale
}

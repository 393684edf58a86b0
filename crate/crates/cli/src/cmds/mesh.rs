use crate::args::{build_grid, parse_complex, parse_expr, MeshArgs};
use crate::cmds::scalar_report;
use crate::error::CliError;
use crate::report::{emit, write_output, MeshInfo, Meta, Report};
use minsurf_core::surface::{
    conformality_residual, export_mesh, harmonicity_residual, integrate_patch,
    path_independence_check, MeshFormat, SurfaceError,
};
use serde_json::json;

const PATH_TOL: f64 = 1e-3;
const CONFORMALITY_TOL: f64 = 5e-3;
const HARMONICITY_TOL: f64 = 1e-3;

/// Integrate the patch, write the mesh, and report path-independence,
/// conformality and harmonicity residuals; passes when every residual is
/// within its threshold (`--tol` overrides all three).
pub fn run(args: MeshArgs) -> Result<bool, CliError> {
    let w = parse_expr("w", &args.w)?;
    let grid = build_grid(&args.domain, 2)?;
    let basepoint = match &args.basepoint {
        Some(text) => parse_complex("basepoint", text)?,
        None => grid.node((grid.nx() - 1) / 2, (grid.ny() - 1) / 2),
    };

    let patch = integrate_patch(&w, &grid, basepoint)?;
    let discrepancy = path_independence_check(&w, &grid, basepoint)?;
    let diag = patch.bbox_diagonal();

    let (path_tol, conf_tol, harm_tol) = match args.tol {
        Some(t) => (t, t, t),
        None => (PATH_TOL, CONFORMALITY_TOL, HARMONICITY_TOL),
    };

    let mut reports = vec![scalar_report(
        "mesh.path_independence",
        grid.h(),
        patch.n_valid(),
        discrepancy,
        if diag > 0.0 {
            discrepancy / diag
        } else {
            discrepancy
        },
    )];
    let mut pass = discrepancy <= path_tol;

    // quality checks need an interior stencil; a 2 x 2 grid has none
    match conformality_residual(&patch) {
        Ok((isometry, orthogonality)) => {
            reports.push(scalar_report(
                "mesh.conformality.isometry",
                grid.h(),
                patch.n_valid(),
                isometry,
                isometry,
            ));
            reports.push(scalar_report(
                "mesh.conformality.orthogonality",
                grid.h(),
                patch.n_valid(),
                orthogonality,
                orthogonality,
            ));
            pass = pass && isometry <= conf_tol && orthogonality <= conf_tol;
        }
        Err(SurfaceError::EmptyField) => {}
        Err(other) => return Err(other.into()),
    }
    match harmonicity_residual(&patch) {
        Ok(residual) => {
            reports.push(scalar_report(
                "mesh.harmonicity",
                grid.h(),
                patch.n_valid(),
                residual,
                residual,
            ));
            pass = pass && residual <= harm_tol;
        }
        Err(SurfaceError::EmptyField) => {}
        Err(other) => return Err(other.into()),
    }

    let format = if args.out.to_ascii_lowercase().ends_with(".ply") {
        MeshFormat::Ply
    } else {
        MeshFormat::Obj
    };
    let mut bytes = Vec::new();
    let stats = export_mesh(&patch, format, &mut bytes)?;
    write_output(&args.out, &bytes)?;

    let mut meta = Meta::new();
    meta.mesh = Some(MeshInfo {
        format: match format {
            MeshFormat::Obj => "obj",
            MeshFormat::Ply => "ply",
        },
        vertices: stats.vertices,
        triangles: stats.triangles,
    });
    let report = Report {
        command: "mesh",
        config: json!({
            "w": args.w,
            "domain": [grid.x0(), grid.x1(), grid.y0(), grid.y1()],
            "nx": grid.nx(),
            "ny": grid.ny(),
            "h": grid.h(),
            "basepoint": [basepoint.re, basepoint.im],
            "out": args.out,
            "thresholds": {
                "path_independence": path_tol,
                "conformality": conf_tol,
                "harmonicity": harm_tol,
            },
        }),
        reports,
        pass,
        meta,
    };
    // with --out - the mesh itself owns standard output; the report would
    // corrupt the stream, so it is suppressed there
    if args.out != "-" {
        emit(&report, "-")?;
    }
    Ok(pass)
}

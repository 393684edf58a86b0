use crate::args::{build_grid, parse_expr, CurvatureArgs};
use crate::error::CliError;
use crate::report::write_output;
use minsurf_core::geometry::{curvatures_from_pq, pq_from_w};
use std::fmt::Write;

/// Sample the curvature data over every node as CSV rows
/// `x,y,K,kappa,p,q,valid`; singular nodes keep their coordinates and get
/// empty value cells with `valid = 0`.
pub fn run(args: CurvatureArgs) -> Result<bool, CliError> {
    let w1 = parse_expr("w1", &args.w1)?;
    let w2 = parse_expr("w2", &args.w2)?;
    let grid = build_grid(&args.domain, 1)?;

    let mut csv = String::from("x,y,K,kappa,p,q,valid\n");
    let mut any_valid = false;
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let z = grid.node(i, j);
            match pq_from_w(&w1, &w2, z) {
                Ok(pq) => {
                    let c = curvatures_from_pq(pq);
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{},{},1",
                        z.re, z.im, c.k, c.kappa, pq.p, pq.q
                    );
                    any_valid = true;
                }
                Err(_) => {
                    let _ = writeln!(csv, "{},{},,,,,0", z.re, z.im);
                }
            }
        }
    }
    if !any_valid {
        return Err(CliError::EmptyField(
            "curvature sampling: every node is singular".into(),
        ));
    }
    write_output(&args.out, csv.as_bytes())?;
    Ok(true)
}

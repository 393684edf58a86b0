//! Command-line front end: verification, field export, gauge checks and
//! mesh generation with machine-readable reports.
//!
//! Exit codes: 0 pass, 1 criteria failed, 2 parse error, 3 empty field,
//! 4 normalization error, 5 singular path.

mod args;
mod cmds;
mod error;
mod report;

use args::{Cli, Command};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Liouville(a) => cmds::liouville::run(a),
        Command::Verify(a) => cmds::verify::run(a),
        Command::Curvature(a) => cmds::curvature::run(a),
        Command::Gauge(a) => cmds::gauge::run(a),
        Command::Mesh(a) => cmds::mesh::run(a),
    };
    let code = match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

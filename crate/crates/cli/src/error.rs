//! Error-to-exit-code mapping.
//!
//! 0 pass, 1 criteria failed, 2 parse error, 3 empty field,
//! 4 normalization error, 5 singular path.

use minsurf_core::expr::ParseError;
use minsurf_core::numerics::NumError;
use minsurf_core::surface::SurfaceError;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, domains, resolutions, or expressions.
    Parse(String),
    /// Every node masked, or nothing left to measure.
    EmptyField(String),
    /// Gauge parameters off the unit sphere without --renormalize.
    Normalization(String),
    /// Integration cannot leave the basepoint.
    SingularPath(String),
    /// I/O and other environment failures.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Parse(_) => 2,
            CliError::EmptyField(_) => 3,
            CliError::Normalization(_) => 4,
            CliError::SingularPath(_) => 5,
        }
    }

    pub fn expr(flag: &str, err: ParseError) -> CliError {
        CliError::Parse(format!("--{flag}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m)
            | CliError::EmptyField(m)
            | CliError::Normalization(m)
            | CliError::SingularPath(m)
            | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> CliError {
        match e {
            NumError::EmptyField => CliError::EmptyField(e.to_string()),
            NumError::GridTooSmall { .. } => CliError::Parse(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> CliError {
        match e {
            SurfaceError::SingularPath { .. } => CliError::SingularPath(e.to_string()),
            SurfaceError::BasepointOffGrid { .. } => CliError::Parse(e.to_string()),
            SurfaceError::EmptyField | SurfaceError::EmptyMesh => {
                CliError::EmptyField(e.to_string())
            }
            SurfaceError::Io(io) => CliError::Runtime(format!("write error: {io}")),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Runtime(format!("write error: {e}"))
    }
}

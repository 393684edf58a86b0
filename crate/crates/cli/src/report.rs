//! Machine-readable run reports.
//!
//! Top level: `{"command", "config", "reports", "pass", "meta"}`. The
//! comparison payload (everything except `meta`) is a deterministic function
//! of the inputs; wall-clock data lives only in `meta.unix_time`.

use crate::error::CliError;
use minsurf_core::numerics::{OrderEstimate, ResidualReport};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: serde_json::Value,
    pub reports: Vec<ResidualReport>,
    pub pass: bool,
    pub meta: Meta,
}

#[derive(Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub unix_time: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orders: Vec<OrderEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh: Option<MeshInfo>,
}

#[derive(Serialize)]
pub struct OrderEntry {
    pub equation: String,
    pub order: f64,
    pub below_floor: bool,
}

#[derive(Serialize)]
pub struct MeshInfo {
    pub format: &'static str,
    pub vertices: usize,
    pub triangles: usize,
}

impl Meta {
    pub fn new() -> Meta {
        Meta {
            version: env!("CARGO_PKG_VERSION"),
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            orders: Vec::new(),
            flags: Vec::new(),
            mesh: None,
        }
    }

    pub fn push_order(&mut self, equation: &str, est: OrderEstimate) {
        self.orders.push(OrderEntry {
            equation: equation.to_string(),
            order: est.order,
            below_floor: est.below_floor,
        });
    }
}

/// An order is acceptable when it is second order empirically or when both
/// measurements sit below the rounding floor (nothing left to resolve).
pub fn order_ok(est: OrderEstimate) -> bool {
    est.below_floor || (1.8..=2.2).contains(&est.order)
}

/// Write `bytes` to a path, with `-` meaning standard output.
pub fn write_output(path: &str, bytes: &[u8]) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout().write_all(bytes)?;
        Ok(())
    } else {
        fs::write(path, bytes).map_err(CliError::from)
    }
}

pub fn emit(report: &Report, out: &str) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Runtime(format!("report serialization failed: {e}")))?;
    text.push('\n');
    write_output(out, text.as_bytes())
}

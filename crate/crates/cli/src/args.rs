//! Command-line surface and config parsing helpers.

use crate::error::CliError;
use clap::{Args, Parser, Subcommand};
use minsurf_core::expr::HoloFn;
use minsurf_core::geometry::MoebiusParams;
use minsurf_core::numerics::GridSpec;
use minsurf_core::Complex64;

#[derive(Parser)]
#[command(
    name = "minsurf",
    version,
    about = "Curvature fields of minimal surfaces from holomorphic generators: \
             verification, gauge checks, mesh generation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Verify the Liouville-type equation for the density of one generator
    Liouville(LiouvilleArgs),
    /// Verify the curvature PDE system for a generator pair
    Verify(VerifyArgs),
    /// Sample K, kappa, p, q over a grid as CSV
    Curvature(CurvatureArgs),
    /// Check gauge invariance under Moebius-transformed generators
    Gauge(GaugeArgs),
    /// Integrate a minimal-surface patch and export a mesh
    Mesh(MeshArgs),
}

#[derive(Args)]
pub struct DomainArgs {
    /// Rectangle in the parameter plane: x0,x1,y0,y1
    #[arg(long, default_value = "-1,1,-1,1", allow_hyphen_values = true)]
    pub domain: String,
    /// Nodes along x; the y count follows from the aspect ratio so the
    /// spacing stays square
    #[arg(long, default_value_t = 101)]
    pub n: usize,
}

#[derive(Args)]
pub struct LiouvilleArgs {
    /// Generator expression, e.g. "z^2" or "(2*z - 1)/(z + 2)"
    #[arg(long)]
    pub w: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Bound on max_rel at the base resolution
    #[arg(long, default_value_t = 5e-3)]
    pub tol: f64,
    /// Output path for the JSON report; '-' streams to standard output
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// First generator expression
    #[arg(long)]
    pub w1: String,
    /// Second generator expression
    #[arg(long)]
    pub w2: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Which written form to verify: eq1, eq2, or chain (eq2 plus every
    /// intermediate substitution)
    #[arg(long, default_value = "eq2")]
    pub form: String,
    #[arg(long, default_value_t = 5e-3)]
    pub tol: f64,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct CurvatureArgs {
    #[arg(long)]
    pub w1: String,
    #[arg(long)]
    pub w2: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct GaugeArgs {
    /// Single generator (needs --a and --b)
    #[arg(long)]
    pub w: Option<String>,
    /// First generator of a pair (needs --a1/--b1 and --a2/--b2)
    #[arg(long)]
    pub w1: Option<String>,
    #[arg(long)]
    pub w2: Option<String>,
    /// Gauge parameter a as "re,im"
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<String>,
    /// Scale (a, b) onto the unit sphere instead of rejecting
    #[arg(long)]
    pub renormalize: bool,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Bound on the relative deviation between the original and transformed
    /// fields
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct MeshArgs {
    #[arg(long)]
    pub w: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Integration basepoint "re,im"; defaults to the centre node
    #[arg(long, allow_hyphen_values = true)]
    pub basepoint: Option<String>,
    /// Overrides every quality threshold when set
    #[arg(long)]
    pub tol: Option<f64>,
    /// Mesh path; extension .ply selects PLY, anything else OBJ; '-' streams
    /// OBJ to standard output (suppressing the JSON report)
    #[arg(long, default_value = "-")]
    pub out: String,
}

pub fn parse_expr(flag: &'static str, text: &str) -> Result<HoloFn, CliError> {
    HoloFn::parse(text).map_err(|e| CliError::expr(flag, e))
}

pub fn parse_complex(flag: &str, text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Parse(format!(
            "--{flag}: expected \"re,im\", got {text:?}"
        )));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("--{flag}: bad real part {:?}", parts[0])))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("--{flag}: bad imaginary part {:?}", parts[1])))?;
    Ok(Complex64::new(re, im))
}

pub fn parse_domain(text: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Parse(format!(
            "--domain: expected \"x0,x1,y0,y1\", got {text:?}"
        )));
    }
    let mut out = [0.0; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("--domain: bad number {part:?}")))?;
    }
    Ok(out)
}

/// Gauge parameters from two "re,im" flags, validated or renormalized.
pub fn parse_gauge_pair(
    a_flag: &str,
    a_text: &str,
    b_flag: &str,
    b_text: &str,
    renormalize: bool,
) -> Result<MoebiusParams, CliError> {
    let a = parse_complex(a_flag, a_text)?;
    let b = parse_complex(b_flag, b_text)?;
    let built = if renormalize {
        MoebiusParams::renormalized(a, b)
    } else {
        MoebiusParams::new(a, b)
    };
    built.map_err(|e| CliError::Normalization(format!("--{a_flag}/--{b_flag}: {e}")))
}

/// Build the sampling grid: `n` nodes along x, the y count derived from the
/// aspect ratio and rounded; when the rectangle is not commensurate the top
/// edge moves to keep the spacing exactly square.
pub fn build_grid(args: &DomainArgs, min_nodes: usize) -> Result<GridSpec, CliError> {
    let [x0, x1, y0, mut y1] = parse_domain(&args.domain)?;
    let nx = args.n;
    let ny = if nx == 1 {
        1
    } else {
        if x1 <= x0 {
            return Err(CliError::Parse(format!(
                "--domain: x1 = {x1} must exceed x0 = {x0}"
            )));
        }
        let hx = (x1 - x0) / (nx - 1) as f64;
        let steps = ((y1 - y0) / hx).round();
        if !steps.is_finite() || steps < 0.0 {
            return Err(CliError::Parse(format!(
                "--domain: y1 = {y1} must not precede y0 = {y0}"
            )));
        }
        let ny = steps as usize + 1;
        if ny > 1 {
            let snapped = y0 + (ny - 1) as f64 * hx;
            if (snapped - y1).abs() > 1e-9 * (x1 - x0).max((y1 - y0).abs()) {
                y1 = snapped;
            }
        } else {
            y1 = y0;
        }
        ny
    };
    if nx < min_nodes || ny < min_nodes {
        return Err(CliError::Parse(format!(
            "--n: this command needs at least {min_nodes} nodes per axis, got {nx}x{ny}"
        )));
    }
    GridSpec::new(x0, x1, y0, y1, nx, ny).map_err(|e| CliError::Parse(format!("--domain: {e}")))
}

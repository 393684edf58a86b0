//! Forward-mode evaluation of expression trees with singularity reporting.
//!
//! Every arithmetic step is checked: division by a vanishing modulus is a
//! pole, `log`/`sqrt` at zero is a branch point, and any intermediate that
//! leaves the representable range is flagged, so evaluation never hands a
//! silent infinity or NaN downstream.

use super::ast::{BinOp, ExprAst, Func};
use super::jet::Jet;
use num_complex::Complex64;
use std::fmt;

/// Modulus below which a divisor (or a `log`/`sqrt` argument) counts as zero.
pub const EPS_POLE: f64 = 1e-300;

/// Why a function has no finite first-order jet at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    /// Division by a value of vanishing modulus.
    Pole,
    /// `log` or `sqrt` evaluated at its branch point 0.
    BranchPoint(Func),
    /// An intermediate value left the representable range.
    NonFinite,
    /// The first derivative vanishes where a consumer requires it nonzero.
    DerivativeZero,
}

/// A located evaluation failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    /// The evaluation point in the parameter plane.
    pub at: Complex64,
    pub kind: SingularKind,
}

impl Singularity {
    pub(crate) fn new(at: Complex64, kind: SingularKind) -> Singularity {
        Singularity { at, kind }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            SingularKind::Pole => "pole".to_string(),
            SingularKind::BranchPoint(func) => format!("branch point of {}", func.name()),
            SingularKind::NonFinite => "value outside representable range".to_string(),
            SingularKind::DerivativeZero => "vanishing derivative".to_string(),
        };
        write!(f, "{} at z = {}", what, self.at)
    }
}

impl std::error::Error for Singularity {}

/// Evaluate `ast` at `z`, returning value and derivative together.
pub(crate) fn eval_ast(ast: &ExprAst, z: Complex64) -> Result<Jet, Singularity> {
    let jet = match ast {
        ExprAst::Num(x) => Jet::constant(Complex64::new(*x, 0.0)),
        ExprAst::Const(c) => Jet::constant(c.value()),
        ExprAst::Z => Jet::variable(z),
        ExprAst::Neg(inner) => -eval_ast(inner, z)?,
        ExprAst::Bin(op, lhs, rhs) => {
            let a = eval_ast(lhs, z)?;
            let b = eval_ast(rhs, z)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b.value.norm() < EPS_POLE {
                        return Err(Singularity::new(z, SingularKind::Pole));
                    }
                    a / b
                }
                BinOp::Pow => pow_jet(a, b, z)?,
            }
        }
        ExprAst::Call(func, arg) => apply(*func, eval_ast(arg, z)?, z)?,
    };
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(Singularity::new(z, SingularKind::NonFinite))
    }
}

/// `a^b`. A constant integer exponent goes through repeated multiplication
/// for exactness; anything else is `exp(b log a)` on the principal branch.
fn pow_jet(base: Jet, expo: Jet, z: Complex64) -> Result<Jet, Singularity> {
    if let Some(n) = constant_integer(&expo) {
        if n < 0 && base.value.norm() < EPS_POLE {
            return Err(Singularity::new(z, SingularKind::Pole));
        }
        return Ok(base.powi(n));
    }
    if base.value.norm() < EPS_POLE {
        return Err(Singularity::new(z, SingularKind::BranchPoint(Func::Log)));
    }
    Ok((expo * base.ln()).exp())
}

fn constant_integer(jet: &Jet) -> Option<i32> {
    let v = jet.value;
    let is_const = jet.deriv == Complex64::new(0.0, 0.0);
    if is_const && v.im == 0.0 && v.re.abs() <= i32::MAX as f64 && v.re.fract() == 0.0 {
        Some(v.re as i32)
    } else {
        None
    }
}

fn apply(func: Func, arg: Jet, z: Complex64) -> Result<Jet, Singularity> {
    Ok(match func {
        Func::Exp => arg.exp(),
        Func::Log => {
            if arg.value.norm() < EPS_POLE {
                return Err(Singularity::new(z, SingularKind::BranchPoint(Func::Log)));
            }
            arg.ln()
        }
        Func::Sqrt => {
            if arg.value.norm() < EPS_POLE {
                return Err(Singularity::new(z, SingularKind::BranchPoint(Func::Sqrt)));
            }
            arg.sqrt()
        }
        Func::Sin => arg.sin(),
        Func::Cos => arg.cos(),
        Func::Tan => {
            let c = arg.cos();
            if c.value.norm() < EPS_POLE {
                return Err(Singularity::new(z, SingularKind::Pole));
            }
            arg.sin() / c
        }
        Func::Sinh => arg.sinh(),
        Func::Cosh => arg.cosh(),
    })
}

//! Holomorphic expressions: parsing, rendering, and jet evaluation.
//!
//! The grammar covers rational expressions plus `exp`, `log`, `sqrt`, the
//! trigonometric and hyperbolic functions, with principal branches
//! throughout; enough to express polynomials, Moebius maps and the
//! Weierstrass data this crate manipulates. Numeric literals convert once,
//! decimal to binary; powers with constant integer exponents multiply out
//! exactly, all others evaluate as `exp(b log a)`.
//!
//! [`ExprAst`] and [`HoloFn`] are immutable after construction and evaluation
//! is a pure function of `(ast, z)`, so values can be evaluated from many
//! threads with no synchronization.

mod ast;
mod eval;
mod jet;
mod lexer;
mod parser;

pub use ast::{BinOp, ExprAst, Func, NamedConst};
pub use eval::{SingularKind, Singularity, EPS_POLE};
pub use jet::Jet;
pub use parser::{parse, ParseError, ParseErrorKind};

use num_complex::Complex64;
use std::fmt;

/// A parsed holomorphic expression together with its source text.
///
/// Evaluation at any point either returns a finite [`Jet`] or a located
/// [`Singularity`]; a non-finite number is never returned silently.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloFn {
    ast: ExprAst,
    source: String,
}

impl HoloFn {
    pub fn parse(text: &str) -> Result<HoloFn, ParseError> {
        Ok(HoloFn {
            ast: parse(text)?,
            source: text.to_string(),
        })
    }

    /// Wrap an already-built tree; the source is its canonical rendering.
    pub fn from_ast(ast: ExprAst) -> HoloFn {
        let source = ast.render();
        HoloFn { ast, source }
    }

    /// `(f(z), f'(z))` by forward-mode propagation, exact up to rounding.
    pub fn eval_jet(&self, z: Complex64) -> Result<Jet, Singularity> {
        eval::eval_ast(&self.ast, z)
    }

    pub fn ast(&self) -> &ExprAst {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl fmt::Display for HoloFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

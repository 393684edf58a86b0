//! Expression trees and their canonical text rendering.

use num_complex::Complex64;
use std::fmt;

/// Binary operators. `Pow` is right-associative; everything else is left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Built-in one-argument functions, all evaluated on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }
}

/// Named constants recognised by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConst {
    I,
    Pi,
    E,
}

impl NamedConst {
    pub fn name(self) -> &'static str {
        match self {
            NamedConst::I => "i",
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
        }
    }

    pub fn value(self) -> Complex64 {
        match self {
            NamedConst::I => Complex64::new(0.0, 1.0),
            NamedConst::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            NamedConst::E => Complex64::new(std::f64::consts::E, 0.0),
        }
    }
}

/// Parsed expression tree.
///
/// `Num` holds a non-negative finite real exactly as parsed. Negative and
/// complex constants are represented structurally (`Neg`, `re + im*i`), which
/// is what keeps `parse(render(ast))` an identity on every tree this crate
/// builds.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Num(f64),
    Const(NamedConst),
    /// The free variable `z`.
    Z,
    Neg(Box<ExprAst>),
    Bin(BinOp, Box<ExprAst>, Box<ExprAst>),
    Call(Func, Box<ExprAst>),
}

impl ExprAst {
    /// A real literal; negatives come out as `Neg(Num(|x|))` so the tree
    /// stays inside the grammar.
    pub fn num(x: f64) -> ExprAst {
        if x == 0.0 {
            // normalise -0.0, whose Display form would not re-parse to it
            ExprAst::Num(0.0)
        } else if x < 0.0 {
            ExprAst::Neg(Box::new(ExprAst::Num(-x)))
        } else {
            ExprAst::Num(x)
        }
    }

    /// A complex constant as a grammar-conforming subtree `re + im*i`.
    pub fn complex(c: Complex64) -> ExprAst {
        let im_part = |im: f64| {
            ExprAst::Bin(
                BinOp::Mul,
                Box::new(ExprAst::num(im)),
                Box::new(ExprAst::Const(NamedConst::I)),
            )
        };
        if c.im == 0.0 {
            ExprAst::num(c.re)
        } else if c.re == 0.0 {
            im_part(c.im)
        } else {
            ExprAst::Bin(
                BinOp::Add,
                Box::new(ExprAst::num(c.re)),
                Box::new(im_part(c.im)),
            )
        }
    }

    pub fn bin(op: BinOp, lhs: ExprAst, rhs: ExprAst) -> ExprAst {
        ExprAst::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    /// Canonical text form; `parse` of the result reproduces the tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    // Binding powers: `+ -` = 1, `* /` = 2, unary `-` = 3, `^` = 4, atoms = 5.
    // A node is parenthesised when its power is below what the context needs.
    fn render_into(&self, out: &mut String, min_bp: u8) {
        let bp = match self {
            ExprAst::Bin(BinOp::Add | BinOp::Sub, _, _) => 1,
            ExprAst::Bin(BinOp::Mul | BinOp::Div, _, _) => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::Bin(BinOp::Pow, _, _) => 4,
            _ => 5,
        };
        if bp < min_bp {
            out.push('(');
            self.render_into(out, 0);
            out.push(')');
            return;
        }
        match self {
            ExprAst::Num(x) => {
                use std::fmt::Write;
                let _ = write!(out, "{x}");
            }
            ExprAst::Const(c) => out.push_str(c.name()),
            ExprAst::Z => out.push('z'),
            ExprAst::Neg(inner) => {
                out.push('-');
                inner.render_into(out, 3);
            }
            ExprAst::Bin(op @ (BinOp::Add | BinOp::Sub), l, r) => {
                l.render_into(out, 1);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                r.render_into(out, 2);
            }
            ExprAst::Bin(op @ (BinOp::Mul | BinOp::Div), l, r) => {
                l.render_into(out, 2);
                out.push_str(op.symbol());
                r.render_into(out, 3);
            }
            ExprAst::Bin(BinOp::Pow, l, r) => {
                // the base must be an atom, the exponent any factor
                l.render_into(out, 5);
                out.push('^');
                r.render_into(out, 3);
            }
            ExprAst::Call(f, arg) => {
                out.push_str(f.name());
                out.push('(');
                arg.render_into(out, 0);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

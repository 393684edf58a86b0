//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := factor (('*'|'/') factor)* ;
//! factor := '-' factor | power ;
//! power  := atom ('^' factor)? ;
//! atom   := NUMBER | 'z' | 'i' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')' ;
//! ```
//!
//! `^` binds tighter than unary minus and is right-associative. Whitespace is
//! insignificant. Implicit multiplication is rejected: `2z` is a parse error.

use super::ast::{BinOp, ExprAst};
use super::lexer::{tokenize, Spanned, Tok};
use std::fmt;

/// Nesting depth bound; keeps adversarial inputs from exhausting the stack.
const MAX_DEPTH: u32 = 256;

/// A positioned parse failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnknownIdentifier(String),
    NumberOutOfRange,
    /// Wrong token at this position; `expected` lists what would parse.
    Unexpected {
        found: String,
        expected: &'static [&'static str],
    },
    TooDeep,
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: ", self.offset)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier '{name}'")
            }
            ParseErrorKind::NumberOutOfRange => {
                write!(f, "numeric literal out of range")
            }
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "found {found}, expected {}", expected.join(" or "))
            }
            ParseErrorKind::TooDeep => write!(f, "expression nested too deeply"),
            ParseErrorKind::Empty => write!(f, "empty input"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parse source text into an expression tree.
///
/// Total over arbitrary input: returns either a tree or a positioned error.
pub fn parse(text: &str) -> Result<ExprAst, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let ast = p.expr()?;
    match p.peek().tok {
        Tok::Eof => Ok(ast),
        _ => Err(p.unexpected(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])),
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: u32,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static [&'static str]) -> ParseError {
        let here = self.peek();
        ParseError {
            offset: here.offset,
            kind: ParseErrorKind::Unexpected {
                found: here.tok.describe(),
                expected,
            },
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(ParseError {
                offset: self.peek().offset,
                kind: ParseErrorKind::TooDeep,
            })
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        self.enter()?;
        let mut node = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            node = ExprAst::bin(op, node, self.term()?);
        }
        self.depth -= 1;
        Ok(node)
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut node = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            node = ExprAst::bin(op, node, self.factor()?);
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        self.enter()?;
        let node = if matches!(self.peek().tok, Tok::Minus) {
            self.bump();
            ExprAst::Neg(Box::new(self.factor()?))
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(node)
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().tok, Tok::Caret) {
            self.bump();
            // right-associative: the exponent is a whole factor
            Ok(ExprAst::bin(BinOp::Pow, base, self.factor()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek().tok.clone() {
            Tok::Num(x) => {
                self.bump();
                Ok(ExprAst::Num(x))
            }
            Tok::Z => {
                self.bump();
                Ok(ExprAst::Z)
            }
            Tok::Const(c) => {
                self.bump();
                Ok(ExprAst::Const(c))
            }
            Tok::Func(f) => {
                self.bump();
                self.expect(Tok::LParen, &["'('"])?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, &["')'"])?;
                Ok(ExprAst::Call(f, Box::new(arg)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, &["')'"])?;
                Ok(inner)
            }
            _ => Err(self.unexpected(&["expression"])),
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static [&'static str]) -> Result<(), ParseError> {
        if self.peek().tok == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }
}

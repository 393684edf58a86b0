//! Tokenizer with byte offsets for error reporting.

use super::ast::{Func, NamedConst};
use super::parser::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(f64),
    Z,
    Const(NamedConst),
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    /// Human description used in "found ..." diagnostics.
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number '{x}'"),
            Tok::Z => "'z'".into(),
            Tok::Const(c) => format!("'{}'", c.name()),
            Tok::Func(f) => format!("'{}'", f.name()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

/// Tokenize the whole input. Total: every input yields tokens or a
/// positioned error, never a panic.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match b {
            b'+' => {
                pos += 1;
                Tok::Plus
            }
            b'-' => {
                pos += 1;
                Tok::Minus
            }
            b'*' => {
                pos += 1;
                Tok::Star
            }
            b'/' => {
                pos += 1;
                Tok::Slash
            }
            b'^' => {
                pos += 1;
                Tok::Caret
            }
            b'(' => {
                pos += 1;
                Tok::LParen
            }
            b')' => {
                pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let end = scan_number(bytes, pos);
                let lit = &text[pos..end];
                pos = end;
                let value: f64 = lit.parse().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::NumberOutOfRange,
                })?;
                if !value.is_finite() {
                    return Err(ParseError {
                        offset: start,
                        kind: ParseErrorKind::NumberOutOfRange,
                    });
                }
                Tok::Num(value)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = pos;
                while end < bytes.len()
                    && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                let name = &text[pos..end];
                pos = end;
                match name {
                    "z" => Tok::Z,
                    "i" => Tok::Const(NamedConst::I),
                    "pi" => Tok::Const(NamedConst::Pi),
                    "e" => Tok::Const(NamedConst::E),
                    _ => match Func::from_name(name) {
                        Some(f) => Tok::Func(f),
                        None => {
                            return Err(ParseError {
                                offset: start,
                                kind: ParseErrorKind::UnknownIdentifier(name.to_string()),
                            })
                        }
                    },
                }
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        toks.push(Spanned { tok, offset: start });
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        offset: bytes.len(),
    });
    Ok(toks)
}

/// Digits, optional `.digits`, optional exponent. The exponent marker is
/// consumed only when a full `[eE][+-]?digits` follows, so `2e` lexes as the
/// number 2 followed by the constant `e`.
fn scan_number(bytes: &[u8], start: usize) -> usize {
    let mut pos = start;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos + 1 < bytes.len() && bytes[pos] == b'.' && bytes[pos + 1].is_ascii_digit() {
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut probe = pos + 1;
        if probe < bytes.len() && (bytes[probe] == b'+' || bytes[probe] == b'-') {
            probe += 1;
        }
        if probe < bytes.len() && bytes[probe].is_ascii_digit() {
            while probe < bytes.len() && bytes[probe].is_ascii_digit() {
                probe += 1;
            }
            pos = probe;
        }
    }
    pos
}

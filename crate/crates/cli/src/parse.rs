//! Lexer and precedence-climbing parser for the expression grammar. Every
//! error carries the byte offset it was detected at.

use std::fmt;

use crate::ast::{BinaryOp, Expr, UnaryOp};

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Number(f64),
    Basis(usize),
    Plus,
    Minus,
    Pipe,
    Shl,
    Shr,
    Percent,
    Caret,
    Tilde,
    Bang,
    Star,
    LParen,
    RParen,
}

#[derive(Clone, Copy, Debug)]
struct Spanned {
    tok: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push(Spanned { tok: Tok::Plus, offset: start }),
            b'-' => out.push(Spanned { tok: Tok::Minus, offset: start }),
            b'|' => out.push(Spanned { tok: Tok::Pipe, offset: start }),
            b'%' => out.push(Spanned { tok: Tok::Percent, offset: start }),
            b'^' => out.push(Spanned { tok: Tok::Caret, offset: start }),
            b'~' => out.push(Spanned { tok: Tok::Tilde, offset: start }),
            b'!' => out.push(Spanned { tok: Tok::Bang, offset: start }),
            b'*' => out.push(Spanned { tok: Tok::Star, offset: start }),
            b'(' => out.push(Spanned { tok: Tok::LParen, offset: start }),
            b')' => out.push(Spanned { tok: Tok::RParen, offset: start }),
            b'<' => {
                if bytes.get(i + 1) == Some(&b'<') {
                    out.push(Spanned { tok: Tok::Shl, offset: start });
                    i += 1;
                } else {
                    return err(start, "expected '<<'");
                }
            }
            b'>' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push(Spanned { tok: Tok::Shr, offset: start });
                    i += 1;
                } else {
                    return err(start, "expected '>>'");
                }
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return err(i, "expected digits after decimal point");
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value: f64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return err(start, format!("bad number literal '{text}'")),
                };
                out.push(Spanned { tok: Tok::Number(value), offset: start });
                continue;
            }
            b'e' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return err(start, "expected basis index after 'e'");
                }
                let k: usize = match src[digits_start..i].parse() {
                    Ok(v) => v,
                    Err(_) => return err(start, "basis index too large"),
                };
                if k == 0 {
                    return err(start, "basis indices start at 1");
                }
                out.push(Spanned { tok: Tok::Basis(k), offset: start });
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return err(start, format!("unexpected character '{ch}'"));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    n: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Spanned> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn binary_op(tok: Tok) -> Option<BinaryOp> {
        match tok {
            Tok::Plus => Some(BinaryOp::Add),
            Tok::Minus => Some(BinaryOp::Sub),
            Tok::Pipe => Some(BinaryOp::ScalarProduct),
            Tok::Shl => Some(BinaryOp::ContractLeft),
            Tok::Shr => Some(BinaryOp::ContractRight),
            Tok::Percent => Some(BinaryOp::Clifford),
            Tok::Caret => Some(BinaryOp::Wedge),
            _ => None,
        }
    }

    fn expr(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            let Some(op) = Self::binary_op(t.tok) else { break };
            if op.precedence() < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(op.precedence() + 1)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let Some(t) = self.peek() else {
            return err(self.end, "expected an expression");
        };
        let op = match t.tok {
            Tok::Tilde => Some(UnaryOp::Reverse),
            Tok::Bang => Some(UnaryOp::Involute),
            Tok::Star => Some(UnaryOp::Dual),
            _ => None,
        };
        if let Some(op) = op {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Unary(op, Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(t) = self.bump() else {
            return err(self.end, "expected an expression");
        };
        match t.tok {
            Tok::Number(v) => Ok(Expr::Number(v)),
            Tok::Basis(k) => {
                if k > self.n {
                    return err(
                        t.offset,
                        format!("basis index {k} out of range for dimension {}", self.n),
                    );
                }
                Ok(Expr::Basis(k))
            }
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.bump() {
                    Some(Spanned { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(other) => err(other.offset, "expected ')'"),
                    None => err(self.end, "unbalanced '(': expected ')'"),
                }
            }
            Tok::RParen => err(t.offset, "unmatched ')'"),
            _ => err(t.offset, "expected a number, basis vector, or '('"),
        }
    }
}

/// Parses a full expression for a session of dimension `n`.
pub fn parse(src: &str, n: usize) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        n,
        end: src.len(),
    };
    let expr = parser.expr(0)?;
    if let Some(t) = parser.peek() {
        return err(t.offset, "unexpected trailing input");
    }
    Ok(expr)
}

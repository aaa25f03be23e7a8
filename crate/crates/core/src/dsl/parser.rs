//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := rational | ident | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! `a`, `b` and `L0` are generators; any other identifier is a parameter.
//! Juxtaposition is not multiplication.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::ast::{Gen, Node, OpAst, Span};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at column {}", .pos + 1)]
    UnexpectedChar { ch: char, pos: usize },
    #[error("expected {expected} at column {}, found {found}", .span.start + 1)]
    Unexpected {
        expected: &'static str,
        found: String,
        span: Span,
    },
    #[error("exponent at column {} must be a non-negative integer", .span.start + 1)]
    BadExponent { span: Span },
    #[error("division at column {} is only allowed inside a rational literal", .span.start + 1)]
    Division { span: Span },
    #[error("zero denominator at column {}", .span.start + 1)]
    ZeroDenominator { span: Span },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            Self::UnexpectedChar { pos, .. } => *pos,
            Self::Unexpected { span, .. }
            | Self::BadExponent { span }
            | Self::Division { span }
            | Self::ZeroDenominator { span } => span.start,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, Span::new(i, i + 1)));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((Tok::Int(n), Span::new(start, i)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), Span::new(start, i)));
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(ParseError::UnexpectedChar { ch, pos: i });
        }
    }
    out.push((Tok::End, Span::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            expected,
            found: self.peek().describe(),
            span: self.span(),
        }
    }

    fn expr(&mut self) -> Result<OpAst, ParseError> {
        let first = self.term()?;
        let mut span = first.span;
        let mut items = vec![first];
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            let op_span = self.bump().1;
            let t = self.term()?;
            span = span.join(t.span);
            items.push(if negate {
                let s = op_span.join(t.span);
                OpAst::new(Node::Neg(Box::new(t)), s)
            } else {
                t
            });
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            OpAst::new(Node::Sum(items), span)
        })
    }

    fn term(&mut self) -> Result<OpAst, ParseError> {
        let first = self.unary()?;
        let mut span = first.span;
        let mut items = vec![first];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.unary()?;
                    span = span.join(f.span);
                    items.push(f);
                }
                Tok::Slash => return Err(ParseError::Division { span: self.span() }),
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            OpAst::new(Node::Product(items), span)
        })
    }

    fn unary(&mut self) -> Result<OpAst, ParseError> {
        if *self.peek() == Tok::Minus {
            let s = self.bump().1;
            let inner = self.unary()?;
            let span = s.join(inner.span);
            return Ok(OpAst::new(Node::Neg(Box::new(inner)), span));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<OpAst, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, span) = self.bump();
        let exponent = match tok {
            Tok::Int(n) => n.to_u32().ok_or(ParseError::BadExponent { span })?,
            _ => return Err(ParseError::BadExponent { span }),
        };
        if matches!(self.peek(), Tok::Slash | Tok::Caret) {
            return Err(ParseError::BadExponent { span: span.join(self.span()) });
        }
        let full = base.span.join(span);
        Ok(OpAst::new(Node::Power(Box::new(base), exponent), full))
    }

    fn atom(&mut self) -> Result<OpAst, ParseError> {
        match self.peek().clone() {
            Tok::Int(num) => {
                let s = self.bump().1;
                if *self.peek() != Tok::Slash {
                    return Ok(OpAst::new(Node::Lit(Rational::from_integer(num)), s));
                }
                self.bump();
                match self.bump() {
                    (Tok::Int(den), ds) => {
                        let span = s.join(ds);
                        if den.is_zero() {
                            return Err(ParseError::ZeroDenominator { span });
                        }
                        Ok(OpAst::new(Node::Lit(Rational::new(num, den)), span))
                    }
                    (_, ds) => Err(ParseError::Division { span: ds }),
                }
            }
            Tok::Ident(name) => {
                let s = self.bump().1;
                let node = match name.as_str() {
                    "a" => Node::Gen(Gen::A),
                    "b" => Node::Gen(Gen::B),
                    "L0" => Node::Gen(Gen::L0),
                    _ => Node::Param(name),
                };
                Ok(OpAst::new(node, s))
            }
            Tok::LParen => {
                let open = self.bump().1;
                let mut inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                let close = self.bump().1;
                inner.span = open.join(close);
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }
}

pub fn parse(text: &str) -> Result<OpAst, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let ast = p.expr()?;
    match p.peek() {
        Tok::End => Ok(ast),
        Tok::Slash => Err(ParseError::Division { span: p.span() }),
        _ => Err(p.unexpected("an operator or end of input")),
    }
}

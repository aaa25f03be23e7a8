//! Operator expression trees with source spans.

use std::fmt;

use crate::rational::{format_rational, Rational};

/// Byte range `[start, end)` in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    A,
    B,
    /// `b*a`
    L0,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::A => "a",
            Gen::B => "b",
            Gen::L0 => "L0",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Sum(Vec<OpAst>),
    /// Factors in written order.
    Product(Vec<OpAst>),
    Power(Box<OpAst>, u32),
    Neg(Box<OpAst>),
    Lit(Rational),
    Param(String),
    Gen(Gen),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpAst {
    pub node: Node,
    pub span: Span,
}

impl OpAst {
    pub fn new(node: Node, span: Span) -> Self {
        Self { node, span }
    }

    /// Parameter names in first-occurrence order.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match &self.node {
            Node::Sum(xs) | Node::Product(xs) => xs.iter().for_each(|x| x.collect_params(out)),
            Node::Power(x, _) | Node::Neg(x) => x.collect_params(out),
            Node::Param(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Node::Lit(_) | Node::Gen(_) => {}
        }
    }
}

/// Fully parenthesized rendering, mainly for diagnostics.
impl fmt::Display for OpAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[OpAst], sep: &str| {
            f.write_str("(")?;
            for (k, x) in xs.iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        };
        match &self.node {
            Node::Sum(xs) => join(f, xs, " + "),
            Node::Product(xs) => join(f, xs, "*"),
            Node::Power(x, e) => write!(f, "{x}^{e}"),
            Node::Neg(x) => write!(f, "(-{x})"),
            Node::Lit(r) => write!(f, "{}", format_rational(r)),
            Node::Param(p) => f.write_str(p),
            Node::Gen(g) => write!(f, "{g}"),
        }
    }
}

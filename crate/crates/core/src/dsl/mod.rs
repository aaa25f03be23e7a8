//! Text syntax for operators: parse to an [`OpAst`], lower to a normal-ordered
//! [`WeylElement`], print back canonically.

pub mod ast;
pub mod parser;

use std::collections::BTreeMap;

use thiserror::Error;

pub use ast::{Gen, Node, OpAst, Span};
pub use parser::{parse, ParseError};

use crate::rational::Rational;
use crate::weyl::{WeylElement, WeylError, DEFAULT_DEGREE_CAP};

pub type Bindings = BTreeMap<String, Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LowerError {
    #[error("unbound parameter `{name}` at column {}", .span.start + 1)]
    Unbound { name: String, span: Span },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lower(#[from] LowerError),
}

pub fn lower(ast: &OpAst, binds: &Bindings) -> Result<WeylElement, LowerError> {
    lower_with_cap(ast, binds, DEFAULT_DEGREE_CAP)
}

/// Products are taken in written order; parameters are scalars.
pub fn lower_with_cap(ast: &OpAst, binds: &Bindings, cap: u32) -> Result<WeylElement, LowerError> {
    let zero = WeylElement::zero_with_cap(cap);
    Ok(match &ast.node {
        Node::Sum(xs) => {
            let mut acc = zero;
            for x in xs {
                acc = &acc + &lower_with_cap(x, binds, cap)?;
            }
            acc
        }
        Node::Product(xs) => {
            let mut acc = WeylElement::one().with_cap(cap)?;
            for x in xs {
                acc = acc.multiply(&lower_with_cap(x, binds, cap)?)?;
            }
            acc
        }
        Node::Power(x, e) => lower_with_cap(x, binds, cap)?.pow(*e)?,
        Node::Neg(x) => -&lower_with_cap(x, binds, cap)?,
        Node::Lit(r) => WeylElement::scalar(r.clone()).with_cap(cap)?,
        Node::Param(name) => {
            let v = binds.get(name).ok_or_else(|| LowerError::Unbound {
                name: name.clone(),
                span: ast.span,
            })?;
            WeylElement::scalar(v.clone()).with_cap(cap)?
        }
        Node::Gen(Gen::A) => WeylElement::a().with_cap(cap)?,
        Node::Gen(Gen::B) => WeylElement::b().with_cap(cap)?,
        Node::Gen(Gen::L0) => WeylElement::number().with_cap(cap)?,
    })
}

pub fn parse_and_lower(text: &str, binds: &Bindings, cap: u32) -> Result<WeylElement, DslError> {
    Ok(lower_with_cap(&parse(text)?, binds, cap)?)
}

/// Canonical text; parsing and lowering it gives back `u`.
pub fn print_canonical(u: &WeylElement) -> String {
    u.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat};

    fn eval(text: &str) -> WeylElement {
        lower(&parse(text).unwrap(), &Bindings::new()).unwrap()
    }

    #[test]
    fn lowering_examples() {
        assert_eq!(eval("a*b - b*a"), WeylElement::one());
        assert_eq!(print_canonical(&eval("L0^2")), "b^2*a^2 + b*a");
        assert_eq!(print_canonical(&eval("a^2*b^2")), "b^2*a^2 + 4*b*a + 2");
        assert_eq!(print_canonical(&eval("-a^2 + b*a")), "-1*a^2 + b*a");
        assert_eq!(print_canonical(&eval("b - b")), "0");
        assert_eq!(eval("a^0"), WeylElement::one());
        assert_eq!(&eval("a*b") - &eval("b*a"), WeylElement::one());
    }

    #[test]
    fn lame_text_matches_catalog() {
        let text = "4*(b^3 - 3*m*b^2 + 3*d*b)*a^2 + 6*(b^2 - 2*m*b + d)*a - 2*n*(2*n+1)*(b - m)";
        let binds: Bindings = [("m", int(2)), ("d", int(1)), ("n", int(3))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let u = lower(&parse(text).unwrap(), &binds).unwrap();
        assert_eq!(u, catalog::lame(&int(2), &int(1), 3).element);
    }

    #[test]
    fn unbound_and_overflow() {
        let err = lower(&parse("2*a + k*b").unwrap(), &Bindings::new()).unwrap_err();
        assert_eq!(err, LowerError::Unbound { name: "k".into(), span: Span::new(6, 7) });
        assert!(matches!(
            parse_and_lower("a^10*b", &Bindings::new(), 8),
            Err(DslError::Lower(LowerError::Weyl(WeylError::DegreeOverflow { .. })))
        ));
    }

    #[test]
    fn canonical_round_trip() {
        let u = eval("3/5*b^3*a - 7*a^2*b + 1/3");
        assert_eq!(eval(&print_canonical(&u)), u);
        let v = catalog::laguerre(&rat(3, 2)).element;
        assert_eq!(eval(&print_canonical(&v)), v);
    }
}

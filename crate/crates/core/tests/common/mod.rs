#![allow(dead_code)]

use fockspec::rational::{rat, Rational};
use fockspec::WeylElement;
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// Elements with up to `terms` terms and exponents at most `max_exp`.
pub fn element(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, small_rational()), 0..=terms)
        .prop_map(|ts| WeylElement::from_terms(ts).unwrap())
}

/// Elements with `i <= j + 1` in every term, so that the degree filtration grows
/// by at most one step.
pub fn lowering_or_raising(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, small_rational()), 0..=terms).prop_map(|ts| {
        WeylElement::from_terms(ts.into_iter().map(|(i, j, c)| (i.min(j + 1), j, c))).unwrap()
    })
}

/// Terms with `i <= j`.
pub fn exactly_solvable(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, small_rational()), 0..=terms).prop_map(|ts| {
        WeylElement::from_terms(ts.into_iter().map(|(i, j, c)| (i.min(j), j, c))).unwrap()
    })
}

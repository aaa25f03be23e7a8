//! Normal-form algebra: associativity, the reordering formula against word
//! rewriting, the Fock action, sl(2) relations and the text round trip.

mod common;

use std::collections::BTreeMap;

use fockspec::catalog::{casimir, jminus, jplus, jzero};
use fockspec::dsl::{lower, parse, print_canonical, Bindings};
use fockspec::rational::{int, rat, Rational};
use fockspec::{FockVector, WeylElement};
use proptest::prelude::*;

use common::{element, nonzero_rational, small_rational};

/// Normal-orders `a^j b^i` by repeatedly rewriting the leftmost `ab` as `ba + 1`.
fn rewrite_word(j: usize, i: usize) -> WeylElement {
    let mut pending: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    let mut word = vec![b'a'; j];
    word.extend(std::iter::repeat(b'b').take(i));
    pending.insert(word, 1);
    let mut done: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        match w.windows(2).position(|p| p == b"ab") {
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                *pending.entry(swapped).or_default() += c;
                let mut dropped = w.clone();
                dropped.drain(k..k + 2);
                *pending.entry(dropped).or_default() += c;
            }
            None => {
                let nb = w.iter().filter(|&&x| x == b'b').count() as u32;
                let na = w.len() as u32 - nb;
                *done.entry((nb, na)).or_default() += c;
            }
        }
    }
    WeylElement::from_terms(done.into_iter().map(|((i, j), c)| (i, j, int(c)))).unwrap()
}

#[test]
fn reordering_matches_word_rewriting() {
    let a = WeylElement::a();
    let b = WeylElement::b();
    for j in 0..=6u32 {
        for i in 0..=6u32 {
            let product = a.pow(j).unwrap().multiply(&b.pow(i).unwrap()).unwrap();
            assert_eq!(product, rewrite_word(j as usize, i as usize), "a^{j} b^{i}");
        }
    }
}

#[test]
fn spec_products() {
    let a = WeylElement::a();
    let b = WeylElement::b();
    assert_eq!(a.commutator(&b).unwrap(), WeylElement::one());
    let a2b2 = a.pow(2).unwrap().multiply(&b.pow(2).unwrap()).unwrap();
    assert_eq!(print_canonical(&a2b2), "b^2*a^2 + 4*b*a + 2");
    let l0 = WeylElement::number();
    assert_eq!(l0.commutator(&a).unwrap(), -&a);
    assert_eq!(l0.commutator(&b).unwrap(), b);
}

#[test]
fn degree_cap_is_enforced() {
    let b = WeylElement::b().with_cap(4).unwrap();
    assert!(b.pow(4).is_ok());
    assert!(b.pow(5).is_err());
}

fn fock(v: Vec<Rational>) -> FockVector {
    FockVector::new(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(u in element(3, 4), v in element(3, 4), w in element(3, 4)) {
        let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn distributivity(u in element(3, 4), v in element(3, 4), w in element(3, 4)) {
        let left = u.multiply(&(&v + &w)).unwrap();
        let right = &u.multiply(&v).unwrap() + &u.multiply(&w).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fock_action_is_a_homomorphism(
        u in element(3, 4),
        v in element(3, 4),
        x in prop::collection::vec(small_rational(), 0..6),
    ) {
        let x = fock(x);
        let uv = u.multiply(&v).unwrap();
        prop_assert_eq!(uv.fock_apply_vector(&x), u.fock_apply_vector(&v.fock_apply_vector(&x)));
    }

    #[test]
    fn commutator_is_a_derivation(u in element(2, 3), v in element(2, 3), w in element(2, 3)) {
        // [u, vw] = [u, v] w + v [u, w]
        let left = u.commutator(&v.multiply(&w).unwrap()).unwrap();
        let right = &u.commutator(&v).unwrap().multiply(&w).unwrap()
            + &v.multiply(&u.commutator(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn flag_matrix_columns_are_the_fock_action(u in element(3, 4), n in 0u32..6) {
        let fm = u.flag_matrix(n);
        for k in 0..=n {
            let image = u.fock_apply(k);
            let (inside, over) = image.split_at(n as usize + 1);
            prop_assert_eq!(fm.entries.column(k as usize), inside);
            prop_assert_eq!(fm.leakage.get(&(k as usize)).cloned(), over);
        }
    }

    #[test]
    fn sl2_relations(k in small_rational()) {
        let jp = jplus(&k).element;
        let j0 = jzero(&k).element;
        let jm = jminus().element;
        prop_assert_eq!(j0.commutator(&jp).unwrap(), jp.clone());
        prop_assert_eq!(j0.commutator(&jm).unwrap(), -&jm);
        prop_assert_eq!(jp.commutator(&jm).unwrap(), j0.scale(&int(-2)));
        let alt = WeylElement::b()
            .multiply(&(&WeylElement::number() - &WeylElement::scalar(k.clone())))
            .unwrap();
        prop_assert_eq!(jp, alt);
        let half = &k * rat(1, 2);
        let expected = &half * (&half + int(1));
        prop_assert_eq!(casimir(&k), WeylElement::scalar(expected));
    }

    #[test]
    fn text_round_trip(u in element(5, 6)) {
        let text = print_canonical(&u);
        let back = lower(&parse(&text).unwrap(), &Bindings::new()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn order_sensitivity(c in nonzero_rational()) {
        let binds: Bindings = [("c".to_string(), c.clone())].into_iter().collect();
        let ab = lower(&parse("c*a*b").unwrap(), &binds).unwrap();
        let ba = lower(&parse("b*a*c").unwrap(), &binds).unwrap();
        prop_assert_eq!(&ab - &ba, WeylElement::scalar(c));
    }
}

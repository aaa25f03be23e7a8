//! Every realization of `[a, b] = 1` represents the same Fock-space operator.

mod common;

use fockspec::poly::UniPoly;
use fockspec::rational::{factorial, int, rat, to_f64, Rational};
use fockspec::realization::{
    apply_univariate, complex_fiber_matrix, q_number, quasi_monomial_change, realize_matrix,
};
use fockspec::{RatMatrix, Realization, WeylElement};
use proptest::prelude::*;

use common::{element, lowering_or_raising, small_rational};

fn lattices() -> Vec<Realization> {
    vec![
        Realization::Differential,
        Realization::delta(int(1)).unwrap(),
        Realization::delta(rat(2, 7)).unwrap(),
        Realization::q(int(3)).unwrap(),
        Realization::q(rat(-1, 2)).unwrap(),
    ]
}

/// `D` with `D[k][k] = k! / {k}_q!`, the coordinate of `b^k 1` on `x^k`.
fn q_scaling(q: &Rational, n: u32) -> RatMatrix {
    let mut diag = Vec::new();
    let mut qfact = int(1);
    for k in 0..=n as usize {
        if k > 0 {
            qfact *= q_number(k, q);
        }
        diag.push(Rational::from_integer(factorial(k as u32)) / &qfact);
    }
    RatMatrix::from_diagonal(&diag)
}

fn max_abs_diff(x: &RatMatrix, y: &RatMatrix) -> f64 {
    let d = x.sub(y);
    let mut out: f64 = 0.0;
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            out = out.max(to_f64(&d[(r, c)]).abs());
        }
    }
    out
}

#[test]
fn number_operator_in_every_fiber() {
    let n = 16;
    let diag: Vec<Rational> = (0..=n).map(int).collect();
    let expected = RatMatrix::from_diagonal(&diag);
    assert_eq!(WeylElement::number().flag_matrix(n as u32).entries, expected);
    for m in 0..=4 {
        let fm = complex_fiber_matrix(&WeylElement::number(), m, n as u32).unwrap();
        assert_eq!(fm.entries, expected, "fiber {m}");
    }
}

#[test]
fn landau_form_of_the_number_operator() {
    // b a = (-∂z + z̄) ∂z̄ acts on z̄^k z^m as k z̄^k z^m - k z̄^(k-1) m z^(m-1)
    use fockspec::poly::BiPoly;
    use fockspec::realization::apply_complex;
    let f = BiPoly::monomial(int(1), 3, 2);
    let expected = &BiPoly::monomial(int(2), 3, 2) - &BiPoly::monomial(int(6), 2, 1);
    assert_eq!(apply_complex(&WeylElement::number(), &f), expected);
}

#[test]
fn limits_recover_the_differential_realization() {
    let u = fockspec::catalog::lame(&int(2), &int(1), 4).element;
    let exact = realize_matrix(&u, &Realization::Differential, 4).unwrap().entries;
    let mut previous = f64::INFINITY;
    for e in [3, 6, 9] {
        let small = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(e));
        let lattice = realize_matrix(&u, &Realization::delta(small.clone()).unwrap(), 4).unwrap();
        let dilation = realize_matrix(&u, &Realization::q(int(1) + &small).unwrap(), 4).unwrap();
        let err = max_abs_diff(&lattice.entries, &exact).max(max_abs_diff(&dilation.entries, &exact));
        // first-order convergence in the spacing and in q - 1
        assert!(err < 1e4 * to_f64(&small), "10^-{e}: {err}");
        assert!(err < previous / 500.0, "10^-{e}: {err} after {previous}");
        previous = err;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_and_fiber_matrices_equal_the_flag_matrix(
        u in element(3, 5),
        n in 0u32..6,
        m in 0u32..4,
    ) {
        let flag = u.flag_matrix(n);
        let diff = realize_matrix(&u, &Realization::Differential, n).unwrap();
        prop_assert_eq!(&diff, &flag);
        let fiber = complex_fiber_matrix(&u, m, n).unwrap();
        prop_assert_eq!(&fiber, &flag);
    }

    #[test]
    fn lattice_matrices_are_conjugate_to_the_flag_matrix(
        u in lowering_or_raising(3, 5),
        n in 0u32..6,
        delta in small_rational().prop_filter("nonzero", |d| *d != int(0)),
    ) {
        let flag = u.flag_matrix(n);
        if !flag.is_closed() {
            return Ok(());
        }
        let t = quasi_monomial_change(&delta, n);
        let lattice = realize_matrix(&u, &Realization::delta(delta.clone()).unwrap(), n).unwrap();
        prop_assert!(lattice.is_closed());
        prop_assert_eq!(lattice.entries.mul(&t), t.mul(&flag.entries));
    }

    #[test]
    fn dilation_matrices_are_conjugate_to_the_flag_matrix(
        u in lowering_or_raising(3, 5),
        n in 0u32..6,
        q in prop_oneof![Just(int(2)), Just(rat(1, 3)), Just(rat(-5, 2)), Just(int(-3))],
    ) {
        let flag = u.flag_matrix(n);
        let r = Realization::q(q.clone()).unwrap();
        let dilation = realize_matrix(&u, &r, n).unwrap();
        let d = q_scaling(&q, n);
        prop_assert_eq!(dilation.entries.mul(&d), d.mul(&flag.entries));
        prop_assert_eq!(dilation.leakage.keys().collect::<Vec<_>>(), flag.leakage.keys().collect::<Vec<_>>());
    }

    #[test]
    fn realizations_are_homomorphisms(
        u in element(2, 3),
        v in element(2, 3),
        p in prop::collection::vec(small_rational(), 0..5),
    ) {
        let p = UniPoly::new(p);
        let uv = u.multiply(&v).unwrap();
        for r in lattices() {
            let left = apply_univariate(&uv, &r, &p).unwrap();
            let inner = apply_univariate(&v, &r, &p).unwrap();
            let right = apply_univariate(&u, &r, &inner).unwrap();
            prop_assert_eq!(left, right, "realization {}", r);
        }
    }

    #[test]
    fn vacuum_orbit_matches_quasi_monomials(k in 0u32..8, delta in small_rational().prop_filter("nonzero", |d| *d != int(0))) {
        let r = Realization::delta(delta.clone()).unwrap();
        let bk = WeylElement::b().pow(k).unwrap();
        let image = apply_univariate(&bk, &r, &UniPoly::one()).unwrap();
        let t = quasi_monomial_change(&delta, k);
        prop_assert_eq!(image.coeffs().to_vec(), UniPoly::new(t.column(k as usize)).coeffs().to_vec());
    }
}

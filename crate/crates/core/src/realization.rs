//! Concrete actions of the Heisenberg generators on polynomial spaces.
//!
//! Three univariate realizations act on polynomials in `x`: the differential one
//! (`a = d/dx`, `b = x`), the uniform lattice with spacing `δ`, and the
//! exponential lattice with dilation `q`. The complex-plane realization
//! `a = ∂/∂z̄`, `b = -∂/∂z + z̄` acts on polynomials in `(z, z̄)` and is exposed
//! through fiber matrices over a fixed analytic vacuum `z^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::RatMatrix;
use crate::poly::{BiPoly, UniPoly};
use crate::rational::{parse_rational, Rational};
use crate::weyl::{FlagMatrix, FockVector, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("lattice spacing must be nonzero")]
    ZeroSpacing,
    #[error("dilation q = {0} is not allowed (q must differ from 0, 1 and -1)")]
    BadDilation(Rational),
    #[error("the complex-plane realization has no action on univariate polynomials")]
    NotUnivariate,
    #[error("fiber basis b^k z^{fiber} (k <= {max_power}) is linearly dependent")]
    SingularBasis { fiber: u32, max_power: u32 },
    #[error("image of basis vector {column} is not in the span of the fiber basis")]
    OutsideSpan { column: usize },
    #[error("unknown realization `{0}` (expected differential, delta:<r>, q:<r> or complex[:m])")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    Differential,
    DeltaLattice(Rational),
    QLattice(Rational),
    ComplexPlane { fiber: u32 },
}

impl Realization {
    pub fn delta(spacing: Rational) -> Result<Self, RealizationError> {
        if spacing.is_zero() {
            return Err(RealizationError::ZeroSpacing);
        }
        Ok(Self::DeltaLattice(spacing))
    }

    /// `{n}_q` vanishes for `q = -1` and even `n`, so that value is rejected with 0 and 1.
    pub fn q(q: Rational) -> Result<Self, RealizationError> {
        if q.is_zero() || q.is_one() || (-&q).is_one() {
            return Err(RealizationError::BadDilation(q));
        }
        Ok(Self::QLattice(q))
    }

    pub fn complex(fiber: u32) -> Self {
        Self::ComplexPlane { fiber }
    }

    pub fn is_univariate(&self) -> bool {
        !matches!(self, Self::ComplexPlane { .. })
    }

    /// Short text form, also accepted by `FromStr`.
    pub fn label(&self) -> String {
        match self {
            Self::Differential => "differential".to_string(),
            Self::DeltaLattice(d) => format!("delta:{d}"),
            Self::QLattice(q) => format!("q:{q}"),
            Self::ComplexPlane { fiber } => format!("complex:{fiber}"),
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Realization {
    type Err = RealizationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || RealizationError::Unknown(s.to_string());
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("differential", None) => Ok(Self::Differential),
            ("delta", Some(a)) => Self::delta(parse_rational(a).map_err(|_| unknown())?),
            ("q", Some(a)) => Self::q(parse_rational(a).map_err(|_| unknown())?),
            ("complex", None) => Ok(Self::complex(0)),
            ("complex", Some(a)) => a.parse().map(Self::complex).map_err(|_| unknown()),
            _ => Err(unknown()),
        }
    }
}

/// `{n}_q = q^(n-1) + ... + q + 1`, by Horner summation.
pub fn q_number(n: usize, q: &Rational) -> Rational {
    (0..n).fold(Rational::zero(), |acc, _| acc * q + Rational::one())
}

fn int_r(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn act_a(r: &Realization, p: &UniPoly) -> Result<UniPoly, RealizationError> {
    match r {
        Realization::Differential => Ok(p.derivative()),
        Realization::DeltaLattice(d) => Ok((&p.shift(d) - p).scale(&d.recip())),
        Realization::QLattice(q) => Ok(UniPoly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * q_number(n, q))
                .collect(),
        )),
        Realization::ComplexPlane { .. } => Err(RealizationError::NotUnivariate),
    }
}

pub fn act_b(r: &Realization, p: &UniPoly) -> Result<UniPoly, RealizationError> {
    match r {
        Realization::Differential => Ok(p.mul_x()),
        Realization::DeltaLattice(d) => Ok(p.shift(&-d.clone()).mul_x()),
        Realization::QLattice(q) => {
            let mut coeffs = vec![Rational::zero()];
            for (n, c) in p.coeffs().iter().enumerate() {
                coeffs.push(c * int_r(n + 1) / q_number(n + 1, q));
            }
            Ok(UniPoly::new(coeffs))
        }
        Realization::ComplexPlane { .. } => Err(RealizationError::NotUnivariate),
    }
}

/// Applies `u` to a polynomial, substituting the realized generators into each
/// normal-ordered term with the `a`-factors acting first.
pub fn apply_univariate(
    u: &WeylElement,
    r: &Realization,
    p: &UniPoly,
) -> Result<UniPoly, RealizationError> {
    let mut by_a: BTreeMap<u32, Vec<(u32, &Rational)>> = BTreeMap::new();
    for (i, j, c) in u.terms() {
        by_a.entry(j).or_default().push((i, c));
    }
    let mut out = UniPoly::zero();
    let mut lowered = p.clone();
    let mut current_j = 0;
    for (j, group) in by_a {
        while current_j < j {
            lowered = act_a(r, &lowered)?;
            current_j += 1;
        }
        let mut raised = lowered.clone();
        let mut current_i = 0;
        for (i, c) in group {
            while current_i < i {
                raised = act_b(r, &raised)?;
                current_i += 1;
            }
            out = &out + &raised.scale(c);
        }
    }
    Ok(out)
}

/// Matrix of `u` in the monomial basis `{x^0..x^n}` of a univariate realization,
/// or the fiber matrix at `z^m` for the complex plane.
pub fn realize_matrix(
    u: &WeylElement,
    r: &Realization,
    n: u32,
) -> Result<FlagMatrix, RealizationError> {
    if let Realization::ComplexPlane { fiber } = r {
        return complex_fiber_matrix(u, *fiber, n);
    }
    let size = n as usize + 1;
    let mut entries = RatMatrix::zeros(size, size);
    let mut leakage = BTreeMap::new();
    for k in 0..size {
        let image = apply_univariate(u, r, &UniPoly::monomial(Rational::one(), k))?;
        let (inside, overflow) = FockVector::new(image.into_coeffs()).split_at(size);
        for (row, c) in inside.into_iter().enumerate() {
            entries[(row, k)] = c;
        }
        if let Some(over) = overflow {
            leakage.insert(k, over);
        }
    }
    Ok(FlagMatrix { entries, leakage })
}

/// `∂/∂z̄`.
pub fn complex_act_a(f: &BiPoly) -> BiPoly {
    f.d_zbar()
}

/// `-∂/∂z + z̄`.
pub fn complex_act_b(f: &BiPoly) -> BiPoly {
    &f.mul_zbar() - &f.d_z()
}

pub fn apply_complex(u: &WeylElement, f: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, j, c) in u.terms() {
        let mut g = f.clone();
        for _ in 0..j {
            g = complex_act_a(&g);
        }
        for _ in 0..i {
            g = complex_act_b(&g);
        }
        out = &out + &g.scale(c);
    }
    out
}

/// Matrix of `u` on `{b^k z^m : k = 0..n}` in the complex-plane realization.
///
/// Images are expanded by an exact linear solve against `b^k z^m` for
/// `k = 0..n + deg_b(u)`; coordinates beyond `n` are leakage.
pub fn complex_fiber_matrix(
    u: &WeylElement,
    m: u32,
    n: u32,
) -> Result<FlagMatrix, RealizationError> {
    let size = n as usize + 1;
    let extended = size + u.b_degree() as usize;
    let mut basis = Vec::with_capacity(extended);
    let mut v = BiPoly::monomial(Rational::one(), m, 0);
    for _ in 0..extended {
        basis.push(v.clone());
        v = complex_act_b(&v);
    }
    let images: Vec<BiPoly> = basis[..size].iter().map(|e| apply_complex(u, e)).collect();

    let mut index: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for poly in basis.iter().chain(&images) {
        for (p, q, _) in poly.terms() {
            let next = index.len();
            index.entry((p, q)).or_insert(next);
        }
    }
    let mut aug = RatMatrix::zeros(index.len(), extended + size);
    for (col, poly) in basis.iter().chain(&images).enumerate() {
        for (p, q, c) in poly.terms() {
            aug[(index[&(p, q)], col)] = c.clone();
        }
    }
    let pivots = aug.rref();
    let basis_pivots = pivots.iter().filter(|&&c| c < extended).count();
    if basis_pivots != extended {
        return Err(RealizationError::SingularBasis {
            fiber: m,
            max_power: extended as u32 - 1,
        });
    }
    if let Some(&bad) = pivots.iter().find(|&&c| c >= extended) {
        return Err(RealizationError::OutsideSpan {
            column: bad - extended,
        });
    }

    let mut entries = RatMatrix::zeros(size, size);
    let mut leakage = BTreeMap::new();
    for k in 0..size {
        let coords: Vec<Rational> = (0..extended)
            .map(|row| aug[(row, extended + k)].clone())
            .collect();
        let (inside, overflow) = FockVector::new(coords).split_at(size);
        for (row, c) in inside.into_iter().enumerate() {
            entries[(row, k)] = c;
        }
        if let Some(over) = overflow {
            leakage.insert(k, over);
        }
    }
    Ok(FlagMatrix { entries, leakage })
}

/// Lower-triangular change of basis whose column `k` holds the monomial
/// coefficients of `x(x-δ)...(x-(k-1)δ)`.
pub fn quasi_monomial_change(delta: &Rational, n: u32) -> RatMatrix {
    let size = n as usize + 1;
    let mut out = RatMatrix::zeros(size, size);
    let mut current = UniPoly::one();
    for k in 0..size {
        for (row, c) in current.coeffs().iter().enumerate() {
            out[(row, k)] = c.clone();
        }
        let factor = UniPoly::new(vec![-(delta * int_r(k)), Rational::one()]);
        current = &current * &factor;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    fn realizations() -> Vec<Realization> {
        vec![
            Realization::Differential,
            Realization::delta(int(1)).unwrap(),
            Realization::delta(rat(-1, 3)).unwrap(),
            Realization::q(int(2)).unwrap(),
            Realization::q(rat(1, 2)).unwrap(),
            Realization::q(rat(-3, 2)).unwrap(),
        ]
    }

    #[test]
    fn delta_examples() {
        let d = rat(1, 5);
        let r = Realization::delta(d.clone()).unwrap();
        assert_eq!(
            act_a(&r, &p(&[0, 0, 1])).unwrap(),
            UniPoly::new(vec![d.clone(), int(2)])
        );
        assert_eq!(
            act_b(&r, &p(&[0, 1])).unwrap(),
            UniPoly::new(vec![int(0), -d, int(1)])
        );
    }

    #[test]
    fn q_examples() {
        let q = rat(3, 7);
        let r = Realization::q(q.clone()).unwrap();
        let expected = &q * &q + &q + int(1);
        assert_eq!(
            act_a(&r, &p(&[0, 0, 0, 1])).unwrap(),
            UniPoly::monomial(expected, 2)
        );
        assert_eq!(q_number(0, &q), int(0));
        assert_eq!(q_number(1, &q), int(1));
    }

    #[test]
    fn rejected_parameters() {
        assert_eq!(Realization::delta(int(0)), Err(RealizationError::ZeroSpacing));
        assert!(Realization::q(int(0)).is_err());
        assert!(Realization::q(int(1)).is_err());
        assert!(Realization::q(int(-1)).is_err());
        assert!(Realization::q(int(-2)).is_ok());
        assert_eq!(
            act_a(&Realization::complex(0), &p(&[1])),
            Err(RealizationError::NotUnivariate)
        );
    }

    #[test]
    fn heisenberg_relation_on_monomials() {
        for r in realizations() {
            for k in 0..=20 {
                let x = UniPoly::monomial(int(1), k);
                let ab = act_a(&r, &act_b(&r, &x).unwrap()).unwrap();
                let ba = act_b(&r, &act_a(&r, &x).unwrap()).unwrap();
                assert_eq!(&ab - &ba, x, "realization {r}, k = {k}");
            }
        }
    }

    #[test]
    fn number_operator_is_q_independent() {
        let fm = realize_matrix(&WeylElement::number(), &Realization::q(int(2)).unwrap(), 4).unwrap();
        assert_eq!(
            fm.entries,
            RatMatrix::from_diagonal(&[int(0), int(1), int(2), int(3), int(4)])
        );
        assert!(fm.is_closed());
    }

    #[test]
    fn realized_commutator_is_identity() {
        let a = WeylElement::a();
        let b = WeylElement::b();
        let u = a.commutator(&b).unwrap();
        for r in realizations() {
            let fm = realize_matrix(&u, &r, 8).unwrap();
            assert_eq!(fm.entries, RatMatrix::identity(9));
            // and through the separately realized generators
            for k in 0..=8 {
                let x = UniPoly::monomial(int(1), k);
                let ab = apply_univariate(&a, &r, &apply_univariate(&b, &r, &x).unwrap()).unwrap();
                let ba = apply_univariate(&b, &r, &apply_univariate(&a, &r, &x).unwrap()).unwrap();
                assert_eq!(&ab - &ba, x);
            }
        }
    }

    #[test]
    fn complex_actions() {
        assert_eq!(
            complex_act_a(&BiPoly::monomial(int(1), 0, 2)),
            BiPoly::monomial(int(2), 0, 1)
        );
        let m = 3;
        let bz = complex_act_b(&BiPoly::monomial(int(1), m, 0));
        let expected = &BiPoly::monomial(int(1), m, 1) - &BiPoly::monomial(int(3), m - 1, 0);
        assert_eq!(bz, expected);
        let l0 = apply_complex(&WeylElement::number(), &bz);
        assert_eq!(l0, bz);
    }

    #[test]
    fn fiber_matrices() {
        let fm = complex_fiber_matrix(&WeylElement::number(), 5, 3).unwrap();
        assert_eq!(
            fm.entries,
            RatMatrix::from_diagonal(&[int(0), int(1), int(2), int(3)])
        );
        let a = complex_fiber_matrix(&WeylElement::a(), 0, 1).unwrap();
        assert_eq!(
            a.entries,
            RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]])
        );
        let b = complex_fiber_matrix(&WeylElement::b(), 2, 2).unwrap();
        assert_eq!(b.first_leak().unwrap().0, 2);
    }

    #[test]
    fn quasi_monomials() {
        let c = quasi_monomial_change(&int(1), 3);
        assert_eq!(c.column(2), vec![int(0), int(-1), int(1), int(0)]);
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x: signed Stirling numbers of the first kind
        assert_eq!(c.column(3), vec![int(0), int(2), int(-3), int(1)]);
    }

    #[test]
    fn labels_round_trip() {
        for r in realizations().into_iter().chain([Realization::complex(4)]) {
            assert_eq!(r.label().parse::<Realization>().unwrap(), r);
        }
        assert_eq!("complex".parse::<Realization>().unwrap(), Realization::complex(0));
        assert!("delta:0".parse::<Realization>().is_err());
        assert!("laplace".parse::<Realization>().is_err());
    }
}

//! Roots of rational polynomials: exact where rational, certified numeric otherwise.
//!
//! The polynomial is split into square-free factors, so multiplicities are exact.
//! Real roots of each factor are isolated with a Sturm sequence. An isolated root
//! is rational only if its denominator divides the leading coefficient `L` of the
//! primitive integer form, and two such rationals are at least `1/L^2` apart, so
//! shrinking the interval below that width and testing its simplest rational
//! decides rationality exactly. Irrational real roots are bisected to double
//! precision. Whatever is left is a set of complex-conjugate pairs, found with
//! Aberth–Ehrlich iteration and Newton polishing.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::UniPoly;
use crate::rational::{format_rational, from_f64, to_f64, Rational};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig {
    /// Bound on `|p(λ)| / (1 + max|coeff|)` for numeric roots.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(Rational),
    Numeric { re: f64, im: f64, residual: f64 },
}

impl Eigenvalue {
    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Self::Exact(r) => Some(r),
            Self::Numeric { .. } => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Self::Exact(r) => Complex64::new(to_f64(r), 0.0),
            Self::Numeric { re, im, .. } => Complex64::new(*re, *im),
        }
    }

    /// Report order: exact values ascending, then numeric values by `(re, im)`.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a.cmp(b),
            (Self::Exact(_), Self::Numeric { .. }) => Ordering::Less,
            (Self::Numeric { .. }, Self::Exact(_)) => Ordering::Greater,
            (Self::Numeric { re: r1, im: i1, .. }, Self::Numeric { re: r2, im: i2, .. }) => {
                r1.total_cmp(r2).then(i1.total_cmp(i2))
            }
        }
    }
}

/// Seventeen significant digits, the JSON form of numeric data.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Eigenvalue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Exact(r) => {
                let mut st = s.serialize_struct("Eigenvalue", 2)?;
                st.serialize_field("kind", "exact")?;
                st.serialize_field("value", &format_rational(r))?;
                st.end()
            }
            Self::Numeric { re, im, residual } => {
                let mut st = s.serialize_struct("Eigenvalue", 4)?;
                st.serialize_field("kind", "numeric")?;
                st.serialize_field("re", &format_float(*re))?;
                st.serialize_field("im", &format_float(*im))?;
                st.serialize_field("residual", &format_float(*residual))?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("root tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("cannot take the roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("root finding did not converge: {message}")]
    NonConvergence {
        message: String,
        partial: Vec<Eigenvalue>,
    },
}

/// All roots of `p` with multiplicity, in report order.
pub fn roots(p: &UniPoly, cfg: &RootConfig) -> Result<Vec<Eigenvalue>, RootError> {
    if !(cfg.tol > 0.0) {
        return Err(RootError::BadTolerance(cfg.tol));
    }
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let scale = 1.0 + p.coeffs().iter().map(|c| to_f64(&c.abs())).fold(0.0, f64::max);
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        let found = factor_roots(&factor, p, scale, cfg, &out)?;
        for r in found {
            out.extend(std::iter::repeat_n(r, mult));
        }
    }
    out.sort_by(Eigenvalue::report_cmp);
    Ok(out)
}

fn factor_roots(
    f: &UniPoly,
    full: &UniPoly,
    scale: f64,
    cfg: &RootConfig,
    done: &[Eigenvalue],
) -> Result<Vec<Eigenvalue>, RootError> {
    let deg = f.degree().unwrap_or(0);
    let fail = |message: String, found: &[Eigenvalue]| RootError::NonConvergence {
        message,
        partial: done.iter().chain(found).cloned().collect(),
    };

    let lead = primitive_leading(f);
    let intervals = isolate_real_roots(f);
    let mut found = Vec::with_capacity(deg);
    let mut exact = Vec::new();
    let mut irrational = Vec::new();
    let mut sep = Rational::new(BigInt::one(), &lead * &lead + BigInt::one());
    sep = sep.min(Rational::one());
    for (lo, hi) in intervals {
        let (lo, hi) = bisect_to_width(f, lo, hi, &sep);
        let candidate = simplest_between(&lo, &hi);
        if f.eval(&candidate).is_zero() {
            exact.push(candidate.clone());
            found.push(Eigenvalue::Exact(candidate));
        } else {
            irrational.push((lo, hi));
        }
    }

    for (lo, hi) in irrational {
        let Some(x) = refine_real(f, lo, hi, cfg.max_iter) else {
            return Err(fail("bisection iteration cap reached".into(), &found));
        };
        let residual = residual_real(full, x, scale);
        if residual > cfg.tol && backward_error(full, Complex64::new(x, 0.0)) > cfg.tol {
            return Err(fail(
                format!("real root {x} has residual {residual:e} above tolerance"),
                &found,
            ));
        }
        found.push(Eigenvalue::Numeric { re: x, im: 0.0, residual });
    }

    let n_complex = deg - found.len();
    if n_complex == 0 {
        return Ok(found);
    }
    let mut rest = f.clone();
    for r in &exact {
        rest = rest
            .div_rem(&UniPoly::new(vec![-r.clone(), Rational::one()]))
            .0;
    }
    let approx: Vec<Complex64> = rest.coeffs().iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect();
    let Some(mut zs) = aberth(&approx, cfg.max_iter) else {
        return Err(fail("Aberth iteration cap reached".into(), &found));
    };
    zs.sort_by(|a, b| b.im.abs().total_cmp(&a.im.abs()));
    zs.truncate(n_complex);
    let mut upper: Vec<Complex64> = zs.into_iter().filter(|z| z.im > 0.0).collect();
    if upper.len() * 2 != n_complex {
        return Err(fail("complex roots do not pair into conjugates".into(), &found));
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for z in upper {
        let z = newton_polish(&approx, z, 8);
        let residual = residual_complex(full, z, scale);
        if residual > cfg.tol && backward_error(full, z) > cfg.tol {
            return Err(fail(
                format!("complex root {z} has residual {residual:e} above tolerance"),
                &found,
            ));
        }
        for im in [-z.im, z.im] {
            found.push(Eigenvalue::Numeric { re: z.re, im, residual });
        }
    }
    Ok(found)
}

/// Absolute leading coefficient of the primitive integer multiple of `f`.
fn primitive_leading(f: &UniPoly) -> BigInt {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().cloned().unwrap_or_else(BigInt::one) / content).abs()
}

fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_variations(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Disjoint open intervals, each holding exactly one real root of the
/// square-free `f`; endpoints are never roots.
fn isolate_real_roots(f: &UniPoly) -> Vec<(Rational, Rational)> {
    let seq = sturm_sequence(f);
    let bound = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_variations(&seq, &lo) - sign_variations(&seq, &hi);
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = split_point(f, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// An integer strictly above every root modulus.
///
/// Fujiwara's bound `2 max |c_(n-k)/c_n|^(1/k)` (last term halved) is much
/// tighter than Cauchy's for polynomials with many spread-out roots; it is
/// evaluated in floating point with a safety margin, and Cauchy's exact bound
/// is kept when the floats overflow.
fn root_bound(f: &UniPoly) -> Rational {
    let lead = f.leading();
    let n = f.degree().unwrap_or(0);
    let cauchy = f
        .coeffs()
        .iter()
        .map(|c| (c / &lead).abs())
        .fold(Rational::zero(), Rational::max)
        .ceil()
        + Rational::from_integer(BigInt::from(2));
    let mut fujiwara: f64 = 0.0;
    for k in 1..=n {
        let mut r = to_f64(&(f.coeff(n - k) / &lead).abs());
        if k == n {
            r /= 2.0;
        }
        fujiwara = fujiwara.max(r.powf(1.0 / k as f64));
    }
    let fujiwara = (2.0 * fujiwara * 1.01).ceil() + 2.0;
    match from_f64(fujiwara) {
        Some(b) if fujiwara.is_finite() && b < cauchy => b,
        _ => cauchy,
    }
}

/// A point strictly inside `(lo, hi)` that is not a root of `f`, near the midpoint.
fn split_point(f: &UniPoly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut offset = Rational::zero();
    let mut step = Rational::new(BigInt::one(), BigInt::from(8));
    loop {
        let t = &half + &offset;
        let x = lo + &width * &t;
        if !f.eval(&x).is_zero() {
            return x;
        }
        offset = if offset.is_positive() { -offset } else { step.clone() };
        if offset.is_negative() {
            step = step / Rational::from_integer(BigInt::from(2));
        }
    }
}

/// Halves an isolating interval (sign change at the ends) until narrower than `width`.
fn bisect_to_width(
    f: &UniPoly,
    mut lo: Rational,
    mut hi: Rational,
    width: &Rational,
) -> (Rational, Rational) {
    let lo_sign = f.eval(&lo).is_positive();
    while &(&hi - &lo) >= width {
        let mid = split_point(f, &lo, &hi);
        if f.eval(&mid).is_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Bisects in exact arithmetic down to double-precision resolution.
fn refine_real(f: &UniPoly, mut lo: Rational, mut hi: Rational, max_iter: usize) -> Option<f64> {
    let lo_sign = f.eval(&lo).is_positive();
    for _ in 0..max_iter {
        let (a, b) = (to_f64(&lo), to_f64(&hi));
        let mid_f = 0.5 * (a + b);
        if mid_f <= a || mid_f >= b || (b - a) <= f64::EPSILON * a.abs().max(b.abs()) * 0.5 {
            return Some(closest_end(f, &lo, &hi));
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let v = f.eval(&mid);
        if v.is_zero() {
            return Some(to_f64(&mid));
        }
        if v.is_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

fn closest_end(f: &UniPoly, lo: &Rational, hi: &Rational) -> f64 {
    let candidates = [to_f64(lo), to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2)))), to_f64(hi)];
    candidates
        .into_iter()
        .min_by(|x, y| {
            let fx = from_f64(*x).map(|r| f.eval(&r).abs());
            let fy = from_f64(*y).map(|r| f.eval(&r).abs());
            fx.cmp(&fy)
        })
        .unwrap_or(candidates[1])
}

/// `|p(x)| / (1 + max|coeff|)` evaluated exactly at the double `x`.
pub fn residual_real(p: &UniPoly, x: f64, scale: f64) -> f64 {
    match from_f64(x) {
        Some(r) => to_f64(&p.eval(&r).abs()) / scale,
        None => f64::INFINITY,
    }
}

/// `|p(z)| / Σ|c_k||z|^k`, the relative coefficient perturbation that makes `z`
/// an exact root. Large well-conditioned roots of high-degree polynomials can
/// sit above `tol` in the absolute residual even when `z` is the nearest double
/// to the true root; this measure stays near machine precision for them.
pub fn backward_error(p: &UniPoly, z: Complex64) -> f64 {
    let r = z.norm();
    let weight: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| to_f64(&c.abs()) * r.powi(k as i32))
        .sum();
    if weight == 0.0 {
        return 0.0;
    }
    residual_complex(p, z, 1.0) / weight
}

/// `|p(z)| / (1 + max|coeff|)` evaluated exactly at the complex double `z`.
pub fn residual_complex(p: &UniPoly, z: Complex64, scale: f64) -> f64 {
    let (Some(x), Some(y)) = (from_f64(z.re), from_f64(z.im)) else {
        return f64::INFINITY;
    };
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let nr = &re * &x - &im * &y + c;
        let ni = &re * &y + &im * &x;
        re = nr;
        im = ni;
    }
    let (fr, fi) = (to_f64(&re), to_f64(&im));
    fr.hypot(fi) / scale
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of a polynomial given by
/// ascending coefficients. `None` if the iteration cap is hit.
fn aberth(coeffs: &[Complex64], max_iter: usize) -> Option<Vec<Complex64>> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[n];
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..max_iter {
        let mut converged = true;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() > 4.0 * f64::EPSILON * z[k].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            return Some(z);
        }
    }
    None
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if !next.re.is_finite() || !next.im.is_finite() || horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn exact_values(v: &[Eigenvalue]) -> Vec<Rational> {
        v.iter().filter_map(|e| e.as_exact().cloned()).collect()
    }

    #[test]
    fn rational_roots_are_exact() {
        let p = UniPoly::from_roots(&[int(0), int(1), int(2), int(3)]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(exact_values(&r), vec![int(0), int(1), int(2), int(3)]);
    }

    #[test]
    fn fractional_and_repeated_roots() {
        let p = UniPoly::from_roots(&[rat(5, 2), rat(-1, 3), rat(-1, 3), rat(7, 11)]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(
            exact_values(&r),
            vec![rat(-1, 3), rat(-1, 3), rat(7, 11), rat(5, 2)]
        );
    }

    #[test]
    fn sqrt_eight() {
        let p = UniPoly::new(vec![int(-8), int(0), int(1)]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(r.len(), 2);
        let s = 8f64.sqrt();
        let Eigenvalue::Numeric { re, im, residual } = r[0] else { panic!() };
        assert!((re + s).abs() < 1e-12 && im == 0.0 && residual <= 1e-12);
        let Eigenvalue::Numeric { re, .. } = r[1] else { panic!() };
        assert!((re - s).abs() < 1e-12);
    }

    #[test]
    fn imaginary_pair() {
        let p = UniPoly::new(vec![int(1), int(0), int(1)]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(r.len(), 2);
        let z: Vec<Complex64> = r.iter().map(Eigenvalue::to_complex).collect();
        assert!((z[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((z[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn mixed_spectrum() {
        // (t - 1/2)(t^2 - 2)(t^2 + t + 1)
        let a = UniPoly::from_roots(&[rat(1, 2)]);
        let b = UniPoly::new(vec![int(-2), int(0), int(1)]);
        let c = UniPoly::new(vec![int(1), int(1), int(1)]);
        let p = &(&a * &b) * &c;
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(r.len(), 5);
        assert_eq!(r[0], Eigenvalue::Exact(rat(1, 2)));
        let sum: Complex64 = r.iter().map(Eigenvalue::to_complex).sum();
        // sum of roots = -coeff of t^4 = 1/2 - 1
        assert!((sum - Complex64::new(-0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 10), &rat(3, 10)), int(0));
    }

    #[test]
    fn large_irrational_root_beside_rational_ones() {
        // the absolute residual of the nearest double to 8.944... exceeds 1e-12
        let rs = [rat(-4, 5), rat(-1, 2), int(0), rat(2, 3), int(1)];
        let p = &UniPoly::from_roots(&rs) * &UniPoly::new(vec![rat(1, 2), int(-9), int(1)]);
        let found = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(found.iter().filter(|e| e.is_exact()).count(), 5);
        let big = (9.0 + 79f64.sqrt()) / 2.0;
        let Eigenvalue::Numeric { re, .. } = found[6] else { panic!() };
        assert!((re - big).abs() < 1e-14 * big);
        assert!(backward_error(&p, Complex64::new(re, 0.0)) < 1e-15);
    }

    #[test]
    fn bad_inputs() {
        let p = UniPoly::new(vec![int(1), int(1)]);
        let cfg = RootConfig { tol: 0.0, ..Default::default() };
        assert_eq!(roots(&p, &cfg), Err(RootError::BadTolerance(0.0)));
        assert_eq!(
            roots(&UniPoly::zero(), &RootConfig::default()),
            Err(RootError::ZeroPolynomial)
        );
        assert!(roots(&UniPoly::one(), &RootConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn iteration_cap_reports_partial_results() {
        // t (t^2 - 2): the exact root is found, the irrational ones need bisection
        let p = &UniPoly::from_roots(&[int(0)]) * &UniPoly::new(vec![int(-2), int(0), int(1)]);
        let cfg = RootConfig { max_iter: 2, ..Default::default() };
        match roots(&p, &cfg) {
            Err(RootError::NonConvergence { partial, .. }) => {
                assert_eq!(partial, vec![Eigenvalue::Exact(int(0))]);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}

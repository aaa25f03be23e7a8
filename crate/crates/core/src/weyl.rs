//! Normal-ordered elements of the Heisenberg enveloping algebra.
//!
//! An element is stored as a finite sum `Σ A_ij b^i a^j` with every `b` to the
//! left of every `a`, subject to `[a, b] = 1`. This normal form is unique, so
//! equality of elements is equality of coefficient maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::RatMatrix;
use crate::rational::{binomial, factorial, falling_factorial, Rational};

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("degree overflow: exponent {exponent} exceeds the degree cap {cap}")]
    DegreeOverflow { exponent: u32, cap: u32 },
}

/// `Σ A_ij b^i a^j` keyed by `(i, j)`; zero coefficients are never stored.
///
/// Each element carries a degree cap bounding both exponents. Binary operations
/// use the larger of the two caps.
#[derive(Clone, Debug)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), Rational>,
    cap: u32,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for WeylElement {}

impl Default for WeylElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::zero_with_cap(DEFAULT_DEGREE_CAP)
    }

    pub fn zero_with_cap(cap: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut out = Self::zero();
        out.insert(0, 0, c);
        out
    }

    /// The single term `coeff * b^i a^j`.
    pub fn make(coeff: Rational, i: u32, j: u32) -> Result<Self, WeylError> {
        Self::make_with_cap(coeff, i, j, DEFAULT_DEGREE_CAP)
    }

    pub fn make_with_cap(coeff: Rational, i: u32, j: u32, cap: u32) -> Result<Self, WeylError> {
        check_cap(i.max(j), cap)?;
        let mut out = Self::zero_with_cap(cap);
        out.insert(i, j, coeff);
        Ok(out)
    }

    /// The annihilation generator `a`.
    pub fn a() -> Self {
        Self::monomial(0, 1)
    }

    /// The creation generator `b`.
    pub fn b() -> Self {
        Self::monomial(1, 0)
    }

    /// The number operator `L0 = b a`.
    pub fn number() -> Self {
        Self::monomial(1, 1)
    }

    fn monomial(i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.insert(i, j, Rational::one());
        out
    }

    /// Builds an element from `(i, j, coeff)` triples, summing repeated keys.
    pub fn from_terms<I>(terms: I) -> Result<Self, WeylError>
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            check_cap(i.max(j), out.cap)?;
            out.accumulate(i, j, c);
        }
        Ok(out)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Returns a copy with a different degree cap; fails if a stored exponent exceeds it.
    pub fn with_cap(&self, cap: u32) -> Result<Self, WeylError> {
        check_cap(self.b_degree().max(self.a_degree()), cap)?;
        Ok(Self {
            terms: self.terms.clone(),
            cap,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(i, j)` key order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn b_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn a_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// The constant value if the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn insert(&mut self, i: u32, j: u32, c: Rational) {
        if !c.is_zero() {
            self.terms.insert((i, j), c);
        }
    }

    fn accumulate(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_with_cap(self.cap);
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            cap: self.cap,
        }
    }

    /// Exact normal form of the product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, WeylError> {
        let cap = self.cap.max(other.cap);
        let mut out = Self::zero_with_cap(cap);
        for (&(i, j), x) in &self.terms {
            for (&(k, l), y) in &other.terms {
                check_cap((i + k).max(j + l), cap)?;
                let xy = x * y;
                for (r, weight) in reorder_weights(j, k) {
                    let c = &xy * Rational::from_integer(weight);
                    out.accumulate(i + k - r, j + l - r, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Result<Self, WeylError> {
        let mut acc = Self::one().with_cap(self.cap)?;
        for _ in 0..exponent {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, WeylError> {
        Ok(&self.multiply(other)? - &other.multiply(self)?)
    }

    /// Image of `b^k|0⟩`: each `b^i a^j` contributes `A_ij (k)_j b^(k-j+i)|0⟩`.
    pub fn fock_apply(&self, k: u32) -> FockVector {
        let mut out = FockVector::zero();
        for (&(i, j), c) in &self.terms {
            if j > k {
                continue;
            }
            let w = Rational::from_integer(falling_factorial(k, j));
            out.accumulate((k - j + i) as usize, c * w);
        }
        out.trim();
        out
    }

    /// Image of an arbitrary Fock vector, by linearity.
    pub fn fock_apply_vector(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (k, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = self.fock_apply(k as u32);
            for (d, x) in image.coeffs.iter().enumerate() {
                out.accumulate(d, c * x);
            }
        }
        out.trim();
        out
    }

    /// Matrix of the action on `span{b^0..b^n}|0⟩`, with out-of-range images
    /// recorded as leakage.
    pub fn flag_matrix(&self, n: u32) -> FlagMatrix {
        let size = n as usize + 1;
        let mut entries = RatMatrix::zeros(size, size);
        let mut leakage = BTreeMap::new();
        for k in 0..size {
            let image = self.fock_apply(k as u32);
            let (inside, overflow) = image.split_at(size);
            for (r, c) in inside.into_iter().enumerate() {
                entries[(r, k)] = c;
            }
            if let Some(over) = overflow {
                leakage.insert(k, over);
            }
        }
        FlagMatrix { entries, leakage }
    }

    /// Normal form of `Σ c_j L0^j` for coefficients `c_0, c_1, ...`.
    pub fn eval_poly_in_l0(coeffs: &[Rational]) -> Result<Self, WeylError> {
        let l0 = Self::number();
        let mut power = Self::one();
        let mut out = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if j > 0 {
                power = power.multiply(&l0)?;
            }
            out = &out + &power.scale(c);
        }
        Ok(out)
    }

    /// Terms in printing order: descending total degree, then ascending b-degree.
    pub fn terms_in_print_order(&self) -> Vec<(u32, u32, &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|x, y| (y.0 + y.1).cmp(&(x.0 + x.1)).then(x.0.cmp(&y.0)));
        v
    }
}

/// The expansion `a^j b^i = Σ_k k! C(i,k) C(j,k) b^(i-k) a^(j-k)`, as `(k, weight)`.
pub fn reorder_weights(j: u32, i: u32) -> Vec<(u32, BigInt)> {
    (0..=i.min(j))
        .map(|k| (k, factorial(k) * binomial(i, k) * binomial(j, k)))
        .collect()
}

fn check_cap(exponent: u32, cap: u32) -> Result<(), WeylError> {
    if exponent > cap {
        Err(WeylError::DegreeOverflow { exponent, cap })
    } else {
        Ok(())
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;

    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out.cap = self.cap.max(rhs.cap);
        for (&(i, j), c) in &rhs.terms {
            out.accumulate(i, j, c.clone());
        }
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;

    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;

    fn neg(self) -> WeylElement {
        WeylElement {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
            cap: self.cap,
        }
    }
}

impl fmt::Display for WeylElement {
    /// Canonical text: terms joined by ` + `, each `c*b^i*a^j` with unit exponents
    /// written bare, zero exponents and unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms_in_print_order()
            .into_iter()
            .map(|(i, j, c)| format_term(i, j, c))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn format_term(i: u32, j: u32, c: &Rational) -> String {
    let mut factors = Vec::new();
    let gen = |name: &str, e: u32| match e {
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    if i > 0 {
        factors.push(gen("b", i));
    }
    if j > 0 {
        factors.push(gen("a", j));
    }
    if factors.is_empty() {
        return c.to_string();
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else {
        format!("{c}*{body}")
    }
}

/// `Σ coeffs[k] b^k|0⟩`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    coeffs: Vec<Rational>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut v = Self { coeffs };
        v.trim();
        v
    }

    /// `b^k|0⟩`.
    pub fn basis(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn accumulate(&mut self, k: usize, c: Rational) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, Rational::zero());
        }
        self.coeffs[k] += c;
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Splits into the first `size` coefficients (zero-padded) and the part of
    /// degree `>= size`, kept at its absolute degrees. `None` if that part is zero.
    pub fn split_at(&self, size: usize) -> (Vec<Rational>, Option<FockVector>) {
        let mut inside: Vec<Rational> = self.coeffs.iter().take(size).cloned().collect();
        inside.resize(size, Rational::zero());
        if self.coeffs.len() <= size {
            return (inside, None);
        }
        let mut over = self.coeffs.clone();
        for c in over.iter_mut().take(size) {
            *c = Rational::zero();
        }
        (inside, Some(FockVector::new(over)))
    }
}

/// Matrix of an operator on `{b^k|0⟩ : k = 0..N}` plus the out-of-range part of
/// each column's image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMatrix {
    pub entries: RatMatrix,
    pub leakage: BTreeMap<usize, FockVector>,
}

impl FlagMatrix {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn max_degree(&self) -> usize {
        self.size() - 1
    }

    /// True iff the spanned subspace is invariant.
    pub fn is_closed(&self) -> bool {
        self.leakage.is_empty()
    }

    /// The first leaking column and its overflow.
    pub fn first_leak(&self) -> Option<(usize, &FockVector)> {
        self.leakage.iter().next().map(|(k, v)| (*k, v))
    }

    /// Leading block on columns `0..=n` (and the same rows), treating any
    /// in-range entries below row `n` as leakage.
    pub fn truncate(&self, n: usize) -> FlagMatrix {
        let size = n + 1;
        assert!(size <= self.size());
        let mut entries = RatMatrix::zeros(size, size);
        let mut leakage = BTreeMap::new();
        for k in 0..size {
            let mut full = self.entries.column(k);
            if let Some(over) = self.leakage.get(&k) {
                for (d, c) in over.coeffs().iter().enumerate().skip(full.len()) {
                    full.resize(d + 1, Rational::zero());
                    full[d] = c.clone();
                }
            }
            let (inside, overflow) = FockVector::new(full).split_at(size);
            for (r, c) in inside.into_iter().enumerate() {
                entries[(r, k)] = c;
            }
            if let Some(over) = overflow {
                leakage.insert(k, over);
            }
        }
        FlagMatrix { entries, leakage }
    }
}

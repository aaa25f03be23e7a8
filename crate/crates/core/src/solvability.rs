//! Exactly- and quasi-exactly-solvable classification.
//!
//! Invariance of `span{b^0..b^n}|0⟩` is decided by applying the operator to the
//! basis and looking for components above degree `n`. The closed-form
//! coefficient constraints are evaluated alongside and checked against that
//! scan; they are never used as the decision procedure.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{falling_factorial, serde_text, Rational};
use crate::weyl::WeylElement;

pub const DEFAULT_SCAN_BOUND: u32 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolvabilityError {
    #[error("operator is not exactly solvable: term b^{i} a^{j} raises the degree")]
    NotExactlySolvable { i: u32, j: u32 },
}

/// Coefficients of `Q4(b) a^2 + Q3(b) a + Q2(b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QesCoeffs {
    #[serde(with = "serde_text")]
    pub a4: Rational,
    #[serde(with = "serde_text")]
    pub a3: Rational,
    #[serde(with = "serde_text")]
    pub a2: Rational,
    #[serde(with = "serde_text")]
    pub a1: Rational,
    #[serde(with = "serde_text")]
    pub a0: Rational,
    #[serde(with = "serde_text")]
    pub b3: Rational,
    #[serde(with = "serde_text")]
    pub b2: Rational,
    #[serde(with = "serde_text")]
    pub b1: Rational,
    #[serde(with = "serde_text")]
    pub b0: Rational,
    #[serde(with = "serde_text")]
    pub d2: Rational,
    #[serde(with = "serde_text")]
    pub d1: Rational,
    #[serde(with = "serde_text")]
    pub d0: Rational,
}

impl QesCoeffs {
    /// Coefficients of `Q4, Q3, Q2` in ascending powers of `b`.
    pub fn polys(&self) -> [Vec<Rational>; 3] {
        [
            vec![
                self.a0.clone(),
                self.a1.clone(),
                self.a2.clone(),
                self.a3.clone(),
                self.a4.clone(),
            ],
            vec![
                self.b0.clone(),
                self.b1.clone(),
                self.b2.clone(),
                self.b3.clone(),
            ],
            vec![self.d0.clone(), self.d1.clone(), self.d2.clone()],
        ]
    }

    pub fn to_element(&self) -> WeylElement {
        let [q4, q3, q2] = self.polys();
        let terms = [(q4, 2u32), (q3, 1), (q2, 0)]
            .into_iter()
            .flat_map(|(q, j)| {
                q.into_iter()
                    .enumerate()
                    .map(move |(i, c)| (i as u32, j, c))
            });
        WeylElement::from_terms(terms).expect("QES coefficients stay far below the degree cap")
    }

    /// Reads the coefficients back from an element of the form
    /// `Q4(b) a^2 + Q3(b) a + Q2(b)` with `deg Q_k <= k`; `None` otherwise.
    pub fn from_element(u: &WeylElement) -> Option<Self> {
        let mut c = Self::default();
        for (i, j, v) in u.terms() {
            let slot = match (j, i) {
                (2, 4) => &mut c.a4,
                (2, 3) => &mut c.a3,
                (2, 2) => &mut c.a2,
                (2, 1) => &mut c.a1,
                (2, 0) => &mut c.a0,
                (1, 3) => &mut c.b3,
                (1, 2) => &mut c.b2,
                (1, 1) => &mut c.b1,
                (1, 0) => &mut c.b0,
                (0, 2) => &mut c.d2,
                (0, 1) => &mut c.d1,
                (0, 0) => &mut c.d0,
                _ => return None,
            };
            *slot = v.clone();
        }
        Some(c)
    }

    /// True when `a4 = b3 = d2 = 0`.
    pub fn is_heun(&self) -> bool {
        self.a4.is_zero() && self.b3.is_zero() && self.d2.is_zero()
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True iff every term `b^i a^j` has `i <= j`, i.e. the operator preserves every
/// flag subspace.
pub fn is_exactly_solvable(u: &WeylElement) -> bool {
    u.terms().all(|(i, j, _)| i <= j)
}

/// Eigenvalue on the degree-`k` sector of an exactly-solvable operator:
/// `Σ_j A_jj k(k-1)...(k-j+1)`.
pub fn es_diagonal(u: &WeylElement, k: u32) -> Result<Rational, SolvabilityError> {
    if let Some((i, j, _)) = u.terms().find(|(i, j, _)| i > j) {
        return Err(SolvabilityError::NotExactlySolvable { i, j });
    }
    Ok(u.terms()
        .filter(|(i, j, _)| i == j)
        .map(|(_, j, c)| c * Rational::from_integer(falling_factorial(k, j)))
        .sum())
}

/// Left-hand sides of the two closed-form QES constraints at degree `n`:
///
/// `r1 = a4 n(n-1) + b3 n + d2`,
/// `r2 = a4 (n-1)(n-2) + b3 (n-1) + d2 + a3 n(n-1) + b2 n + d1`.
pub fn qes_constraint_residuals(c: &QesCoeffs, n: i64) -> (Rational, Rational) {
    let r1 = &c.a4 * r(n * (n - 1)) + &c.b3 * r(n) + &c.d2;
    let r2 = &c.a4 * r((n - 1) * (n - 2))
        + &c.b3 * r(n - 1)
        + &c.d2
        + &c.a3 * r(n * (n - 1))
        + &c.b2 * r(n)
        + &c.d1;
    (r1, r2)
}

/// `a3 n(n-1) + b2 n + d1`.
pub fn heun_constraint_residual(a3: &Rational, b2: &Rational, d1: &Rational, n: i64) -> Rational {
    a3 * r(n * (n - 1)) + b2 * r(n) + d1
}

/// Coefficients that must vanish for `span{b^0..b^n}|0⟩` to be invariant under
/// `Q4(b) a^2 + Q3(b) a + Q2(b)`, read off the action `b^k ↦ Σ` directly.
///
/// Only `b^n` and `b^(n-1)` can leave the span: `b^n` reaches degrees `n+2`
/// and `n+1`, `b^(n-1)` reaches degree `n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeakageConditions {
    /// Coefficient of `b^(n+2)` in the image of `b^n`: `a4 n(n-1) + b3 n + d2`.
    #[serde(with = "serde_text")]
    pub top_from_n: Rational,
    /// Coefficient of `b^(n+1)` in the image of `b^(n-1)` (absent for `n = 0`):
    /// `a4 (n-1)(n-2) + b3 (n-1) + d2`.
    #[serde(with = "serde_text::option", skip_serializing_if = "Option::is_none")]
    pub top_from_n_minus_1: Option<Rational>,
    /// Coefficient of `b^(n+1)` in the image of `b^n`: `a3 n(n-1) + b2 n + d1`.
    #[serde(with = "serde_text")]
    pub sub_from_n: Rational,
}

impl LeakageConditions {
    pub fn all_zero(&self) -> bool {
        self.top_from_n.is_zero()
            && self.sub_from_n.is_zero()
            && self.top_from_n_minus_1.as_ref().is_none_or(Zero::is_zero)
    }
}

pub fn leakage_conditions(c: &QesCoeffs, n: u32) -> LeakageConditions {
    let n = i64::from(n);
    let top = |k: i64| &c.a4 * r(k * (k - 1)) + &c.b3 * r(k) + &c.d2;
    LeakageConditions {
        top_from_n: top(n),
        top_from_n_minus_1: (n >= 1).then(|| top(n - 1)),
        sub_from_n: &c.a3 * r(n * (n - 1)) + &c.b2 * r(n) + &c.d1,
    }
}

/// All `n <= nmax` for which `span{b^0..b^n}|0⟩` is invariant.
pub fn invariant_degree_scan(u: &WeylElement, nmax: u32) -> BTreeSet<u32> {
    // degree of the image of b^k, or None when b^k is annihilated
    let image_degree: Vec<Option<usize>> =
        (0..=nmax).map(|k| u.fock_apply(k).degree()).collect();
    let mut out = BTreeSet::new();
    let mut reach = 0usize;
    for n in 0..=nmax {
        if let Some(d) = image_degree[n as usize] {
            reach = reach.max(d);
        }
        if reach <= n as usize {
            out.insert(n);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintResiduals {
    Qes {
        degree: u32,
        #[serde(with = "serde_text")]
        r1: Rational,
        #[serde(with = "serde_text")]
        r2: Rational,
    },
    Heun {
        degree: u32,
        #[serde(with = "serde_text")]
        r: Rational,
    },
}

impl ConstraintResiduals {
    pub fn all_zero(&self) -> bool {
        match self {
            Self::Qes { r1, r2, .. } => r1.is_zero() && r2.is_zero(),
            Self::Heun { r, .. } => r.is_zero(),
        }
    }
}

/// First column of the flag matrix at `degree` whose image leaves the span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeakageWitness {
    pub degree: u32,
    pub column: usize,
    /// Overflow coefficients indexed by absolute degree (entries `<= degree` are zero).
    #[serde(with = "serde_text::vec")]
    pub overflow: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityReport {
    pub exactly_solvable: bool,
    pub invariant_degrees: Vec<u32>,
    pub scan_bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_residuals: Option<ConstraintResiduals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leakage_witness: Option<LeakageWitness>,
}

pub fn leakage_witness(u: &WeylElement, degree: u32) -> Option<LeakageWitness> {
    let fm = u.flag_matrix(degree);
    fm.first_leak().map(|(column, over)| LeakageWitness {
        degree,
        column,
        overflow: over.coeffs().to_vec(),
    })
}

/// Full classification. `declared` is an optional degree to report constraint
/// residuals and a leakage witness for; `coeffs` are the QES coefficients of
/// `u`, when known.
pub fn classify(
    u: &WeylElement,
    nmax: u32,
    declared: Option<u32>,
    coeffs: Option<&QesCoeffs>,
) -> SolvabilityReport {
    let exactly_solvable = is_exactly_solvable(u);
    let invariant_degrees: Vec<u32> = invariant_degree_scan(u, nmax).into_iter().collect();
    let constraint_residuals = match (declared, coeffs) {
        (Some(n), Some(c)) if c.is_heun() => Some(ConstraintResiduals::Heun {
            degree: n,
            r: heun_constraint_residual(&c.a3, &c.b2, &c.d1, i64::from(n)),
        }),
        (Some(n), Some(c)) => {
            let (r1, r2) = qes_constraint_residuals(c, i64::from(n));
            Some(ConstraintResiduals::Qes { degree: n, r1, r2 })
        }
        _ => None,
    };
    let witness_degree = match declared {
        Some(n) => Some(n),
        None if invariant_degrees.is_empty() => Some(0),
        None => None,
    };
    SolvabilityReport {
        exactly_solvable,
        invariant_degrees,
        scan_bound: nmax,
        constraint_residuals,
        leakage_witness: witness_degree.and_then(|n| leakage_witness(u, n)),
    }
}

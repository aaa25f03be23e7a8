//! Polynomial-sector spectra and cross-realization isospectrality.

pub mod charpoly;
pub mod eigen;
pub mod roots;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::matrix::RatMatrix;
use crate::rational::{format_rational, Rational};
use crate::realization::{realize_matrix, Realization, RealizationError};
use crate::weyl::{FockVector, WeylElement};

pub use charpoly::{char_poly, CharPoly};
pub use eigen::{exact_eigenvectors, numeric_eigenvector, EigenvectorError};
pub use roots::{format_float, roots, Eigenvalue, RootConfig, RootError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("degree-{degree} subspace is not invariant: column {column} leaks to {}", overflow_text(.overflow))]
    Leakage {
        degree: u32,
        column: usize,
        overflow: FockVector,
    },
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Eigenvector(#[from] EigenvectorError),
}

fn overflow_text(v: &FockVector) -> String {
    let parts: Vec<String> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| match (k, num_traits::One::is_one(c)) {
            (0, _) => c.to_string(),
            (1, true) => "b".to_string(),
            (1, false) => format!("{c}*b"),
            (_, true) => format!("b^{k}"),
            (_, false) => format!("{c}*b^{k}"),
        })
        .collect();
    parts.join(" + ")
}

/// The matrix of `u` on its invariant degree-`n` subspace in realization `r`.
pub fn restrict(u: &WeylElement, r: &Realization, n: u32) -> Result<RatMatrix, SpectrumError> {
    let fm = realize_matrix(u, r, n)?;
    if let Some((column, over)) = fm.first_leak() {
        return Err(SpectrumError::Leakage {
            degree: n,
            column,
            overflow: over.clone(),
        });
    }
    Ok(fm.entries)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EigenVector {
    /// Coefficients of `x^0..x^n` (or `b^0..b^n`), highest nonzero entry 1.
    Exact(Vec<Rational>),
    /// Unit-norm coefficients.
    Numeric(Vec<Complex64>),
}

impl Serialize for EigenVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EigenVector", 2)?;
        match self {
            Self::Exact(v) => {
                st.serialize_field("kind", "exact")?;
                let coeffs: Vec<String> = v.iter().map(format_rational).collect();
                st.serialize_field("coeffs", &coeffs)?;
            }
            Self::Numeric(v) => {
                st.serialize_field("kind", "numeric")?;
                let coeffs: Vec<[String; 2]> = v
                    .iter()
                    .map(|z| [format_float(z.re), format_float(z.im)])
                    .collect();
                st.serialize_field("coeffs", &coeffs)?;
            }
        }
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPair {
    pub eigenvalue: Eigenvalue,
    pub eigenvector: EigenVector,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub operator: String,
    pub realization: String,
    pub degree: u32,
    pub char_poly: CharPoly,
    /// All roots of the characteristic polynomial with multiplicity.
    pub eigenvalues: Vec<Eigenvalue>,
    pub eigenpairs: Vec<EigenPair>,
}

/// Characteristic polynomial, eigenvalues and eigenvectors of `u` on its
/// degree-`n` invariant subspace.
pub fn spectrum(
    u: &WeylElement,
    r: &Realization,
    n: u32,
    cfg: &RootConfig,
) -> Result<Spectrum, SpectrumError> {
    let m = restrict(u, r, n)?;
    let cp = char_poly(&m);
    let eigenvalues = roots(cp.poly(), cfg)?;
    let mut eigenpairs = Vec::new();
    let mut previous: Option<&Eigenvalue> = None;
    for ev in &eigenvalues {
        if previous == Some(ev) {
            continue;
        }
        previous = Some(ev);
        match ev {
            Eigenvalue::Exact(lambda) => {
                for v in exact_eigenvectors(&m, lambda)? {
                    eigenpairs.push(EigenPair {
                        eigenvalue: ev.clone(),
                        eigenvector: EigenVector::Exact(v),
                    });
                }
            }
            Eigenvalue::Numeric { .. } => {
                let v = numeric_eigenvector(&m, ev.to_complex(), cfg.tol, cfg.max_iter)?;
                eigenpairs.push(EigenPair {
                    eigenvalue: ev.clone(),
                    eigenvector: EigenVector::Numeric(v),
                });
            }
        }
    }
    Ok(Spectrum {
        operator: u.to_string(),
        realization: r.label(),
        degree: n,
        char_poly: cp,
        eigenvalues,
        eigenpairs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationCharPoly {
    pub realization: String,
    pub char_poly: CharPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsospectralReport {
    pub degree: u32,
    /// True iff every characteristic polynomial is identical.
    pub equal: bool,
    pub entries: Vec<RealizationCharPoly>,
}

/// Exact characteristic polynomials of `u` restricted to degree `n` in each
/// realization, and whether they coincide.
pub fn isospectral_check(
    u: &WeylElement,
    n: u32,
    realizations: &[Realization],
) -> Result<IsospectralReport, SpectrumError> {
    let entries = realizations
        .par_iter()
        .map(|r| {
            restrict(u, r, n).map(|m| RealizationCharPoly {
                realization: r.label(),
                char_poly: char_poly(&m),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let equal = entries.windows(2).all(|w| w[0].char_poly == w[1].char_poly);
    Ok(IsospectralReport { degree: n, equal, entries })
}

/// Differential, lattices at the given spacings and dilations, and complex fibers.
pub fn realization_family(
    deltas: &[Rational],
    qs: &[Rational],
    fibers: &[u32],
) -> Result<Vec<Realization>, RealizationError> {
    let mut out = vec![Realization::Differential];
    for d in deltas {
        out.push(Realization::delta(d.clone())?);
    }
    for q in qs {
        out.push(Realization::q(q.clone())?);
    }
    out.extend(fibers.iter().map(|&m| Realization::complex(m)));
    Ok(out)
}

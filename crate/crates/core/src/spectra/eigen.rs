//! Eigenvectors: exact null spaces for rational eigenvalues, inverse iteration
//! for numeric ones.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::matrix::RatMatrix;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenvectorError {
    #[error("{0} is not an eigenvalue: M - λI is nonsingular")]
    NotAnEigenvalue(String),
    #[error("inverse iteration at λ = {re} + {im}i stalled with residual {residual:e}")]
    Breakdown { re: f64, im: f64, residual: f64 },
}

/// Null-space basis of `M - λI`, each vector scaled so its highest-index
/// nonzero entry is 1. More than one vector means a repeated eigenvalue.
pub fn exact_eigenvectors(
    m: &RatMatrix,
    lambda: &Rational,
) -> Result<Vec<Vec<Rational>>, EigenvectorError> {
    let basis = m.shift_diagonal(lambda).nullspace();
    if basis.is_empty() {
        return Err(EigenvectorError::NotAnEigenvalue(lambda.to_string()));
    }
    Ok(basis
        .into_iter()
        .map(|v| {
            let top = v
                .iter()
                .rev()
                .find(|c| !c.is_zero())
                .cloned()
                .expect("null-space vectors are nonzero");
            v.into_iter().map(|c| c / &top).collect()
        })
        .collect())
}

/// Unit eigenvector for an approximate eigenvalue, with its largest component
/// made real and positive. Fails unless `‖Mv - λv‖ <= 10 tol`.
pub fn numeric_eigenvector(
    m: &RatMatrix,
    lambda: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<Complex64>, EigenvectorError> {
    let n = m.rows();
    let dense: Vec<Vec<Complex64>> = (0..n)
        .map(|r| (0..n).map(|c| Complex64::new(to_f64(&m[(r, c)]), 0.0)).collect())
        .collect();
    let scale = dense
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let shift = lambda + Complex64::new(scale * 1e-14, 0.0);
    let real = lambda.im == 0.0;
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0 + 0.1 * k as f64, if real { 0.0 } else { 0.05 * k as f64 }))
        .collect();
    normalize(&mut v);
    let mut best = residual(&dense, lambda, &v);
    for _ in 0..max_iter.clamp(1, 8) {
        let Some(mut next) = solve_shifted(&dense, shift, &v) else {
            break;
        };
        normalize(&mut next);
        let res = residual(&dense, lambda, &next);
        v = next;
        best = res;
        if res <= tol {
            break;
        }
    }
    if real {
        // a real shift of a real matrix keeps every iterate real
        v.iter_mut().for_each(|z| z.im = 0.0);
    }
    if best <= 10.0 * tol {
        Ok(v)
    } else {
        Err(EigenvectorError::Breakdown {
            re: lambda.re,
            im: lambda.im,
            residual: best,
        })
    }
}

pub fn residual(m: &[Vec<Complex64>], lambda: Complex64, v: &[Complex64]) -> f64 {
    m.iter()
        .zip(v)
        .map(|(row, vi)| {
            let mv: Complex64 = row.iter().zip(v).map(|(a, x)| a * x).sum();
            (mv - lambda * vi).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = if pivot.norm() > 0.0 {
        pivot.conj() / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
}

/// Solves `(M - σI) x = rhs` by Gaussian elimination with partial pivoting.
fn solve_shifted(m: &[Vec<Complex64>], sigma: Complex64, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row[r] -= sigma;
            row.push(rhs[r]);
            row
        })
        .collect();
    let tiny = f64::EPSILON * m.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        a.swap(col, p);
        if a[col][col].norm() < tiny {
            a[col][col] = Complex64::new(tiny, 0.0);
        }
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for c in col..=n {
                let t = a[col][c];
                a[r][c] -= f * t;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let s: Complex64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][n] - s) / a[r][r];
        if !x[r].re.is_finite() || !x[r].im.is_finite() {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn laguerre_two_by_two() {
        let alpha = rat(3, 2);
        let m = RatMatrix::from_rows(vec![
            vec![int(0), -(&alpha + int(1))],
            vec![int(0), int(1)],
        ]);
        let v = exact_eigenvectors(&m, &int(1)).unwrap();
        assert_eq!(v, vec![vec![rat(-5, 2), int(1)]]);
    }

    #[test]
    fn repeated_eigenvalue_gives_full_basis() {
        let m = RatMatrix::from_diagonal(&[int(2), int(2), int(3)]);
        let v = exact_eigenvectors(&m, &int(2)).unwrap();
        assert_eq!(v.len(), 2);
        assert!(matches!(
            exact_eigenvectors(&m, &int(5)),
            Err(EigenvectorError::NotAnEigenvalue(_))
        ));
    }

    #[test]
    fn numeric_sqrt_eight() {
        let m = RatMatrix::from_rows(vec![vec![int(0), int(-2)], vec![int(-4), int(0)]]);
        let lambda = Complex64::new(8f64.sqrt(), 0.0);
        let v = numeric_eigenvector(&m, lambda, 1e-12, 20).unwrap();
        // (M - λ) v = 0 → v ∝ (-2, λ)... check the ratio
        let ratio = v[0] / v[1];
        assert!((ratio - Complex64::new(-2.0 / 8f64.sqrt(), 0.0)).norm() < 1e-10);
    }

    #[test]
    fn numeric_complex_pair() {
        // rotation by 90 degrees: eigenvalues ±i
        let m = RatMatrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let v = numeric_eigenvector(&m, Complex64::new(0.0, 1.0), 1e-12, 20).unwrap();
        let dense = vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        assert!(residual(&dense, Complex64::new(0.0, 1.0), &v) < 1e-12);
    }

    #[test]
    fn numeric_non_eigenvalue_fails() {
        let m = RatMatrix::from_diagonal(&[int(1), int(2)]);
        assert!(numeric_eigenvector(&m, Complex64::new(1.5, 0.0), 1e-12, 20).is_err());
    }
}

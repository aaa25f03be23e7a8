//! Exact characteristic polynomials by the Faddeev–LeVerrier recursion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::matrix::RatMatrix;
use crate::poly::UniPoly;
use crate::rational::{format_rational, Rational};

/// Monic `det(t I - M)`, coefficients in ascending powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly(UniPoly);

impl CharPoly {
    /// Wraps a monic polynomial. Panics if `p` is not monic.
    pub fn from_monic(p: UniPoly) -> Self {
        assert!(p.leading().is_one(), "characteristic polynomial must be monic");
        Self(p)
    }

    pub fn poly(&self) -> &UniPoly {
        &self.0
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_string_in("t"))
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(format_rational).collect();
        let mut st = s.serialize_struct("CharPoly", 2)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `det(t I - M)` for a square rational matrix.
///
/// With `N_0 = 0` and `c_n = 1`, the recursion `N_k = M N_(k-1) + c_(n-k+1) I`,
/// `c_(n-k) = -tr(M N_k) / k` produces every coefficient exactly.
pub fn char_poly(m: &RatMatrix) -> CharPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::one(); n + 1];
    let mut acc = RatMatrix::zeros(n, n);
    for k in 1..=n {
        acc = m.mul(&acc);
        for i in 0..n {
            acc[(i, i)] += &coeffs[n - k + 1];
        }
        let trace = m.mul(&acc).trace();
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    CharPoly(UniPoly::new(coeffs))
}

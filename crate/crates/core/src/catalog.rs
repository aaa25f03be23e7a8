//! Named operators: the exactly-solvable Hermite and Laguerre families, the
//! Heun-type QES operators (Lamé, sextic) and the sl(2) generators.
//!
//! Lamé parameters are `m` (μ) and `d`; sextic parameters are `alpha` and
//! `beta`. Degrees `n` index the invariant span `{b^0..b^n}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rational::{as_degree, format_rational, int, rat, serde_text, Rational};
use crate::solvability::{heun_constraint_residual, QesCoeffs};
use crate::weyl::{WeylElement, WeylError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("operator `{op}` has no parameter `{param}`")]
    UnexpectedParam { op: String, param: String },
    #[error("parameter `{name}` must be a non-negative integer, got {value}")]
    NotADegree { name: String, value: String },
    #[error("Heun operators need a4 = b3 = d2 = 0")]
    NotHeun,
    #[error("Heun constraint violated at degree {degree}: residual {residual}")]
    ConstraintViolation { degree: u32, residual: String },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "ES")]
    Es,
    #[serde(rename = "QES")]
    Qes,
    #[serde(rename = "Other")]
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpSpec {
    pub name: String,
    #[serde(serialize_with = "display_element")]
    pub element: WeylElement,
    #[serde(with = "serde_text::map")]
    pub params: BTreeMap<String, Rational>,
    pub invariant_degree: Option<u32>,
    pub family: Family,
    /// `Q4 a^2 + Q3 a + Q2` coefficients for QES entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qes: Option<QesCoeffs>,
}

fn display_element<S: Serializer>(u: &WeylElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&u.to_string())
}

fn element(terms: Vec<(u32, u32, Rational)>) -> WeylElement {
    WeylElement::from_terms(terms).expect("catalog exponents are at most 3")
}

fn params<const N: usize>(pairs: [(&str, Rational); N]) -> BTreeMap<String, Rational> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn from_u32(n: u32) -> Rational {
    int(i64::from(n))
}

/// `ba`.
pub fn number() -> OpSpec {
    OpSpec {
        name: "number".into(),
        element: WeylElement::number(),
        params: BTreeMap::new(),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

/// `-a^2 + ba`.
pub fn hermite() -> OpSpec {
    OpSpec {
        name: "hermite".into(),
        element: element(vec![(0, 2, int(-1)), (1, 1, int(1))]),
        params: BTreeMap::new(),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

/// `-ba^2 + (b - α - 1)a`.
pub fn laguerre(alpha: &Rational) -> OpSpec {
    let shift = -(alpha + Rational::one());
    OpSpec {
        name: "laguerre".into(),
        element: element(vec![(1, 2, int(-1)), (1, 1, int(1)), (0, 1, shift)]),
        params: params([("alpha", alpha.clone())]),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

/// `Q3(b) a^2 + Q2(b) a + Q1(b)` with `deg Q_k <= k`, checked against the
/// degree-`n` constraint.
pub fn heun(c: &QesCoeffs, n: u32) -> Result<OpSpec, CatalogError> {
    if !c.is_heun() {
        return Err(CatalogError::NotHeun);
    }
    let residual = heun_constraint_residual(&c.a3, &c.b2, &c.d1, i64::from(n));
    if !residual.is_zero() {
        return Err(CatalogError::ConstraintViolation {
            degree: n,
            residual: format_rational(&residual),
        });
    }
    let params = params([
        ("a3", c.a3.clone()),
        ("a2", c.a2.clone()),
        ("a1", c.a1.clone()),
        ("a0", c.a0.clone()),
        ("b2", c.b2.clone()),
        ("b1", c.b1.clone()),
        ("b0", c.b0.clone()),
        ("d1", c.d1.clone()),
        ("d0", c.d0.clone()),
        ("n", from_u32(n)),
    ]);
    Ok(OpSpec {
        name: "heun".into(),
        element: c.to_element(),
        params,
        invariant_degree: Some(n),
        family: Family::Qes,
        qes: Some(c.clone()),
    })
}

pub fn lame_coeffs(m: &Rational, d: &Rational, n: u32) -> QesCoeffs {
    let n = i64::from(n);
    let nn = int(2 * n * (2 * n + 1));
    QesCoeffs {
        a3: int(4),
        a2: int(-12) * m,
        a1: int(12) * d,
        b2: int(6),
        b1: int(-12) * m,
        b0: int(6) * d,
        d1: -nn.clone(),
        d0: nn * m,
        ..Default::default()
    }
}

/// `4(b^3 - 3m b^2 + 3d b)a^2 + 6(b^2 - 2m b + d)a - 2n(2n+1)(b - m)`.
pub fn lame(m: &Rational, d: &Rational, n: u32) -> OpSpec {
    let mut spec = heun(&lame_coeffs(m, d, n), n).expect("Lamé satisfies the Heun constraint");
    spec.name = "lame".into();
    spec.params = params([("m", m.clone()), ("d", d.clone()), ("n", from_u32(n))]);
    spec
}

/// `(g2, g3) = (12(m^2 - d), 4m(2m^2 - 3d))`.
pub fn elliptic_invariants(m: &Rational, d: &Rational) -> (Rational, Rational) {
    let m2 = m * m;
    let g2 = int(12) * (&m2 - d);
    let g3 = int(4) * m * (int(2) * &m2 - int(3) * d);
    (g2, g3)
}

pub fn sextic_coeffs(alpha: &Rational, beta: &Rational, n: u32) -> QesCoeffs {
    QesCoeffs {
        a1: int(-4),
        b2: int(4) * alpha,
        b1: int(4) * beta,
        b0: int(-2),
        d1: int(-4) * alpha * from_u32(n),
        ..Default::default()
    }
}

/// `-4ba^2 + 2(2αb^2 + 2βb - 1)a - 4αn b`.
pub fn sextic(alpha: &Rational, beta: &Rational, n: u32) -> OpSpec {
    let mut spec =
        heun(&sextic_coeffs(alpha, beta, n), n).expect("sextic satisfies the Heun constraint");
    spec.name = "sextic".into();
    spec.params = params([
        ("alpha", alpha.clone()),
        ("beta", beta.clone()),
        ("n", from_u32(n)),
    ]);
    spec
}

/// Potential `c6 τ^6 + c4 τ^4 + c2 τ^2 + c0` of the Schrödinger operator whose
/// even sector is gauge-equivalent to `sextic(α, β, n)` under `x = τ^2`.
pub fn sextic_hamiltonian_coeffs(
    alpha: &Rational,
    beta: &Rational,
    n: u32,
) -> (Rational, Rational, Rational, Rational) {
    let c6 = alpha * alpha;
    let c4 = int(2) * alpha * beta;
    let c2 = beta * beta - from_u32(4 * n + 3) * alpha;
    let c0 = -beta.clone();
    (c6, c4, c2, c0)
}

/// `b^2 a - k b`.
pub fn jplus(k: &Rational) -> OpSpec {
    OpSpec {
        name: "jplus".into(),
        element: element(vec![(2, 1, int(1)), (1, 0, -k.clone())]),
        params: params([("k", k.clone())]),
        invariant_degree: as_degree(k),
        family: Family::Other,
        qes: None,
    }
}

/// `ba - k/2`.
pub fn jzero(k: &Rational) -> OpSpec {
    OpSpec {
        name: "jzero".into(),
        element: element(vec![(1, 1, int(1)), (0, 0, -k * rat(1, 2))]),
        params: params([("k", k.clone())]),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

/// `a`.
pub fn jminus() -> OpSpec {
    OpSpec {
        name: "jminus".into(),
        element: WeylElement::a(),
        params: BTreeMap::new(),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

/// `J0^2 - (J+ J- + J- J+)/2`.
pub fn casimir(k: &Rational) -> WeylElement {
    let jp = jplus(k).element;
    let j0 = jzero(k).element;
    let jm = jminus().element;
    let sq = j0.multiply(&j0).expect("small exponents");
    let anti = &jp.multiply(&jm).expect("small exponents") + &jm.multiply(&jp).expect("small exponents");
    &sq - &anti.scale(&rat(1, 2))
}

pub fn casimir_spec(k: &Rational) -> OpSpec {
    OpSpec {
        name: "casimir".into(),
        element: casimir(k),
        params: params([("k", k.clone())]),
        invariant_degree: None,
        family: Family::Es,
        qes: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Rational,
    Degree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSchema {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Value used when the parameter is not bound; required when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub family: Family,
    pub form: &'static str,
    pub params: Vec<ParamSchema>,
}

const fn required(name: &'static str, kind: ParamKind) -> ParamSchema {
    ParamSchema { name, kind, default: None }
}

const fn zero_default(name: &'static str) -> ParamSchema {
    ParamSchema { name, kind: ParamKind::Rational, default: Some("0") }
}

/// Every named operator with its parameter schema, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    use ParamKind::{Degree, Rational as Q};
    vec![
        CatalogEntry { name: "number", family: Family::Es, form: "b*a", params: vec![] },
        CatalogEntry { name: "hermite", family: Family::Es, form: "-a^2 + b*a", params: vec![] },
        CatalogEntry {
            name: "laguerre",
            family: Family::Es,
            form: "-b*a^2 + (b - alpha - 1)*a",
            params: vec![required("alpha", Q)],
        },
        CatalogEntry {
            name: "heun",
            family: Family::Qes,
            form: "(a3*b^3 + a2*b^2 + a1*b + a0)*a^2 + (b2*b^2 + b1*b + b0)*a + d1*b + d0",
            params: vec![
                zero_default("a3"),
                zero_default("a2"),
                zero_default("a1"),
                zero_default("a0"),
                zero_default("b2"),
                zero_default("b1"),
                zero_default("b0"),
                zero_default("d1"),
                zero_default("d0"),
                required("n", Degree),
            ],
        },
        CatalogEntry {
            name: "lame",
            family: Family::Qes,
            form: "4*(b^3 - 3*m*b^2 + 3*d*b)*a^2 + 6*(b^2 - 2*m*b + d)*a - 2*n*(2*n+1)*(b - m)",
            params: vec![required("m", Q), required("d", Q), required("n", Degree)],
        },
        CatalogEntry {
            name: "sextic",
            family: Family::Qes,
            form: "-4*b*a^2 + 2*(2*alpha*b^2 + 2*beta*b - 1)*a - 4*alpha*n*b",
            params: vec![required("alpha", Q), required("beta", Q), required("n", Degree)],
        },
        CatalogEntry {
            name: "jplus",
            family: Family::Other,
            form: "b^2*a - k*b",
            params: vec![required("k", Q)],
        },
        CatalogEntry { name: "jzero", family: Family::Es, form: "b*a - k/2", params: vec![required("k", Q)] },
        CatalogEntry { name: "jminus", family: Family::Es, form: "a", params: vec![] },
        CatalogEntry {
            name: "casimir",
            family: Family::Es,
            form: "J0^2 - (J+*J- + J-*J+)/2",
            params: vec![required("k", Q)],
        },
    ]
}

/// Builds a named operator from string-keyed bindings, rejecting unknown and
/// missing parameters.
pub fn build(name: &str, binds: &BTreeMap<String, Rational>) -> Result<OpSpec, CatalogError> {
    let entry = entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownOperator(name.to_string()))?;
    if let Some(extra) = binds.keys().find(|k| !entry.params.iter().any(|p| p.name == k.as_str())) {
        return Err(CatalogError::UnexpectedParam { op: name.to_string(), param: extra.clone() });
    }
    let get = |p: &str| -> Result<Rational, CatalogError> {
        let schema = entry.params.iter().find(|s| s.name == p).expect("schema lists every param");
        match (binds.get(p), schema.default) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(_)) => Ok(Rational::zero()),
            (None, None) => Err(CatalogError::MissingParam(p.to_string())),
        }
    };
    let degree = |p: &str| -> Result<u32, CatalogError> {
        let v = get(p)?;
        as_degree(&v).ok_or_else(|| CatalogError::NotADegree {
            name: p.to_string(),
            value: format_rational(&v),
        })
    };
    Ok(match name {
        "number" => number(),
        "hermite" => hermite(),
        "laguerre" => laguerre(&get("alpha")?),
        "heun" => {
            let c = QesCoeffs {
                a3: get("a3")?,
                a2: get("a2")?,
                a1: get("a1")?,
                a0: get("a0")?,
                b2: get("b2")?,
                b1: get("b1")?,
                b0: get("b0")?,
                d1: get("d1")?,
                d0: get("d0")?,
                ..Default::default()
            };
            heun(&c, degree("n")?)?
        }
        "lame" => lame(&get("m")?, &get("d")?, degree("n")?),
        "sextic" => sextic(&get("alpha")?, &get("beta")?, degree("n")?),
        "jplus" => jplus(&get("k")?),
        "jzero" => jzero(&get("k")?),
        "jminus" => jminus(),
        "casimir" => casimir_spec(&get("k")?),
        _ => unreachable!("entries() and build() list the same names"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvability::{invariant_degree_scan, is_exactly_solvable};

    fn binds(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn printed_forms() {
        assert_eq!(hermite().element.to_string(), "-1*a^2 + b*a");
        assert_eq!(
            laguerre(&rat(3, 2)).element.to_string(),
            "-1*b*a^2 + b*a + -5/2*a"
        );
        assert_eq!(jminus().element.to_string(), "a");
    }

    #[test]
    fn es_flags() {
        assert!(is_exactly_solvable(&hermite().element));
        assert!(is_exactly_solvable(&laguerre(&int(7)).element));
        assert!(!is_exactly_solvable(&lame(&int(2), &int(1), 3).element));
    }

    #[test]
    fn lame_scan_and_invariants() {
        for n in 0..6 {
            let spec = lame(&int(2), &int(1), n);
            assert_eq!(invariant_degree_scan(&spec.element, 12).into_iter().collect::<Vec<_>>(), vec![n]);
        }
        assert_eq!(elliptic_invariants(&int(2), &int(1)), (int(36), int(40)));
    }

    #[test]
    fn sextic_scan() {
        for n in 0..5 {
            let spec = sextic(&int(1), &rat(1, 3), n);
            assert_eq!(spec.invariant_degree, Some(n));
            assert_eq!(invariant_degree_scan(&spec.element, 10).into_iter().collect::<Vec<_>>(), vec![n]);
        }
    }

    #[test]
    fn hamiltonian_coeffs() {
        assert_eq!(sextic_hamiltonian_coeffs(&int(1), &int(0), 1), (int(1), int(0), int(-7), int(0)));
        assert_eq!(sextic_hamiltonian_coeffs(&int(0), &int(1), 4), (int(0), int(0), int(1), int(-1)));
        assert_eq!(sextic_hamiltonian_coeffs(&int(1), &int(1), 0), (int(1), int(2), int(-2), int(-1)));
    }

    #[test]
    fn heun_rejects_violations() {
        let mut c = lame_coeffs(&int(2), &int(1), 3);
        c.d1 += int(1);
        assert_eq!(
            heun(&c, 3),
            Err(CatalogError::ConstraintViolation { degree: 3, residual: "1".into() })
        );
        c.a4 = int(1);
        assert_eq!(heun(&c, 3), Err(CatalogError::NotHeun));
    }

    #[test]
    fn jplus_two_forms() {
        let k = rat(5, 3);
        let l0_minus_k = &WeylElement::number() - &WeylElement::scalar(k.clone());
        let alt = WeylElement::b().multiply(&l0_minus_k).unwrap();
        assert_eq!(jplus(&k).element, alt);
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir(&int(0)), WeylElement::zero());
        assert_eq!(casimir(&int(2)), WeylElement::scalar(int(2)));
        assert_eq!(casimir(&int(-1)), WeylElement::scalar(rat(-1, 4)));
    }

    #[test]
    fn build_by_name() {
        let spec = build("lame", &binds(&[("m", int(2)), ("d", int(1)), ("n", int(3))])).unwrap();
        assert_eq!(spec, lame(&int(2), &int(1), 3));
        assert_eq!(
            build("lame", &binds(&[("m", int(2)), ("n", int(3))])),
            Err(CatalogError::MissingParam("d".into()))
        );
        assert!(matches!(
            build("sextic", &binds(&[("alpha", int(1)), ("beta", int(0)), ("n", rat(1, 2))])),
            Err(CatalogError::NotADegree { .. })
        ));
        assert!(matches!(build("hermite", &binds(&[("k", int(1))])), Err(CatalogError::UnexpectedParam { .. })));
        assert!(matches!(build("nope", &BTreeMap::new()), Err(CatalogError::UnknownOperator(_))));
        let heun = build("heun", &binds(&[("a3", int(4)), ("b2", int(6)), ("d1", int(-20)), ("n", int(2))])).unwrap();
        assert_eq!(heun.invariant_degree, Some(2));
    }

    #[test]
    fn every_entry_builds() {
        let all: BTreeMap<String, Rational> = BTreeMap::new();
        for e in entries() {
            let mut b = all.clone();
            for p in &e.params {
                if p.default.is_none() {
                    b.insert(p.name.to_string(), int(1));
                }
            }
            assert_eq!(build(e.name, &b).unwrap().name, e.name);
        }
    }
}

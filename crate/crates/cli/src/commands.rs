//! Command implementations. Each returns a serializable result plus diagnostics.

use std::collections::BTreeMap;

use fockspec::catalog::{self, CatalogEntry, OpSpec};
use fockspec::dsl::{parse_and_lower, Bindings};
use fockspec::rational::{format_rational, parse_rational, serde_text, Rational};
use fockspec::solvability::{classify, QesCoeffs, SolvabilityReport};
use fockspec::spectra::{isospectral_check, realization_family, spectrum, IsospectralReport, Spectrum};
use fockspec::{Realization, WeylElement};
use serde::Serialize;

use crate::args::{Command, Operand};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Diagnostic;

#[derive(Clone, Debug, Serialize)]
pub struct OperatorInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(with = "serde_text::map")]
    pub bindings: BTreeMap<String, Rational>,
    /// Normal-ordered form, present once the operator has been built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    #[serde(with = "serde_text")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalOrderResult {
    pub canonical: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogResult {
    pub operators: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    NormalOrder(NormalOrderResult),
    Classify(SolvabilityReport),
    Spectrum(Spectrum),
    Isospectral(IsospectralReport),
    Catalog(CatalogResult),
}

pub struct Resolved {
    pub element: WeylElement,
    pub spec: Option<OpSpec>,
}

pub fn parse_bindings(items: &[String]) -> Result<Bindings, CliError> {
    let mut out = Bindings::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::binding(format!("binding `{item}` is not of the form name=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || matches!(k, "a" | "b" | "L0") {
            return Err(CliError::binding(format!("`{k}` cannot be bound")));
        }
        let value = parse_rational(v).map_err(|e| CliError::binding(format!("binding `{k}`: {e}")))?;
        if out.insert(k.to_string(), value).is_some() {
            return Err(CliError::binding(format!("parameter `{k}` bound twice")));
        }
    }
    Ok(out)
}

pub fn operator_info(cmd: &Command) -> Option<OperatorInfo> {
    let (name, expr, bind) = match cmd {
        Command::NormalOrder { expr, bind } => (None, Some(expr.clone()), bind),
        Command::Classify { operand, .. }
        | Command::Spectrum { operand, .. }
        | Command::Isospectral { operand, .. } => {
            (operand.source.op.clone(), operand.source.expr.clone(), &operand.bind)
        }
        Command::Catalog => return None,
    };
    // bindings that fail to parse are reported by the command itself
    let bindings = parse_bindings(bind).unwrap_or_default();
    Some(OperatorInfo { name, expr, bindings, canonical: None })
}

fn resolve_expr(expr: &str, bind: &[String], cfg: &RunConfig) -> Result<Resolved, CliError> {
    let binds = parse_bindings(bind)?;
    let element = parse_and_lower(expr, &binds, cfg.degree_cap)?;
    let params = fockspec::dsl::parse(expr).map(|a| a.params()).unwrap_or_default();
    if let Some(extra) = binds.keys().find(|k| !params.contains(k)) {
        return Err(CliError::binding(format!("parameter `{extra}` does not occur in the expression")));
    }
    Ok(Resolved { element, spec: None })
}

pub fn resolve(operand: &Operand, cfg: &RunConfig) -> Result<Resolved, CliError> {
    match (&operand.source.expr, &operand.source.op) {
        (Some(expr), _) => resolve_expr(expr, &operand.bind, cfg),
        (None, Some(name)) => {
            let binds = parse_bindings(&operand.bind)?;
            let spec = catalog::build(name, &binds)?;
            let element = spec.element.with_cap(cfg.degree_cap)?;
            Ok(Resolved { element, spec: Some(spec) })
        }
        (None, None) => Err(CliError::usage("one of --expr or --op is required")),
    }
}

fn degree(n: Option<u32>, r: &Resolved) -> Result<u32, CliError> {
    n.or_else(|| r.spec.as_ref().and_then(|s| s.invariant_degree))
        .ok_or_else(|| CliError::usage("--n is required for this operator"))
}

pub fn normal_order(expr: &str, bind: &[String], cfg: &RunConfig) -> Result<NormalOrderResult, CliError> {
    let r = resolve_expr(expr, bind, cfg)?;
    let terms = r
        .element
        .terms_in_print_order()
        .into_iter()
        .map(|(i, j, c)| Term { i, j, coeff: c.clone() })
        .collect();
    Ok(NormalOrderResult { canonical: r.element.to_string(), terms })
}

pub fn classify_cmd(
    r: &Resolved,
    n: Option<u32>,
    cfg: &RunConfig,
    diags: &mut Vec<Diagnostic>,
) -> SolvabilityReport {
    let declared = n.or_else(|| r.spec.as_ref().and_then(|s| s.invariant_degree));
    let coeffs: Option<QesCoeffs> = match &r.spec {
        Some(s) => s.qes.clone(),
        None => QesCoeffs::from_element(&r.element),
    };
    let nmax = match declared {
        Some(d) => cfg.nmax.max(d),
        None => cfg.nmax,
    };
    let report = classify(&r.element, nmax, declared, coeffs.as_ref());
    if let (Some(d), Some(res)) = (declared, &report.constraint_residuals) {
        let residuals_vanish = res.all_zero();
        let invariant = report.invariant_degrees.contains(&d);
        if residuals_vanish != invariant {
            diags.push(Diagnostic::warning(
                "constraint_scan_disagreement",
                format!(
                    "closed-form constraints at degree {d} {} but the scan finds the span {}",
                    if residuals_vanish { "vanish" } else { "do not vanish" },
                    if invariant { "invariant" } else { "not invariant" },
                ),
            ));
        }
    }
    report
}

pub fn spectrum_cmd(
    r: &Resolved,
    n: Option<u32>,
    realization: &str,
    cfg: &RunConfig,
) -> Result<Spectrum, CliError> {
    let n = degree(n, r)?;
    let real: Realization = realization.parse()?;
    Ok(spectrum(&r.element, &real, n, &cfg.roots())?)
}

pub fn isospectral_cmd(
    r: &Resolved,
    n: Option<u32>,
    cfg: &RunConfig,
    diags: &mut Vec<Diagnostic>,
) -> Result<IsospectralReport, CliError> {
    let n = degree(n, r)?;
    let family = realization_family(&cfg.deltas, &cfg.qs, &cfg.fibers)?;
    let report = isospectral_check(&r.element, n, &family)?;
    if !report.equal {
        diags.push(Diagnostic::warning(
            "not_isospectral",
            "characteristic polynomials differ between realizations",
        ));
    }
    Ok(report)
}

pub fn catalog_cmd() -> CatalogResult {
    CatalogResult { operators: catalog::entries() }
}

pub fn bindings_text(b: &Bindings) -> String {
    b.iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

//! The JSON envelope and the plain-text rendering.

use std::fmt::Write;

use fockspec::rational::format_rational;
use fockspec::spectra::{EigenVector, Eigenvalue};
use serde::Serialize;
use serde_json::Value;

use crate::commands::{bindings_text, CommandResult, OperatorInfo};
use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub level: &'static str,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Diagnostic {
    pub fn warning(code: &str, message: impl Into<String>) -> Self {
        Self { level: "warning", code: code.into(), message: message.into(), detail: None }
    }

    pub fn error(code: &str, message: impl Into<String>, detail: Option<Value>) -> Self {
        Self { level: "error", code: code.into(), message: message.into(), detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub config: RunConfig,
    pub operator: Option<OperatorInfo>,
    pub result: Option<CommandResult>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope is plain data");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(op) = &self.operator {
            let label = op.name.clone().or_else(|| op.expr.clone()).unwrap_or_default();
            let _ = write!(out, "operator: {label}");
            if !op.bindings.is_empty() {
                let _ = write!(out, " [{}]", bindings_text(&op.bindings));
            }
            out.push('\n');
            if let Some(c) = &op.canonical {
                let _ = writeln!(out, "normal form: {c}");
            }
        }
        if let Some(r) = &self.result {
            render_result(&mut out, r);
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "{}: {}", d.level, d.message);
        }
        out
    }
}

fn eigenvalue_text(e: &Eigenvalue) -> String {
    match e {
        Eigenvalue::Exact(r) => format_rational(r),
        Eigenvalue::Numeric { re, im, residual } if *im == 0.0 => format!("{re:.15} (residual {residual:.1e})"),
        Eigenvalue::Numeric { re, im, residual } => {
            let sign = if *im < 0.0 { '-' } else { '+' };
            format!("{re:.15} {sign} {:.15}i (residual {residual:.1e})", im.abs())
        }
    }
}

fn render_result(out: &mut String, r: &CommandResult) {
    match r {
        CommandResult::NormalOrder(n) => {
            let _ = writeln!(out, "{}", n.canonical);
        }
        CommandResult::Classify(rep) => {
            let _ = writeln!(out, "exactly solvable: {}", rep.exactly_solvable);
            let degrees: Vec<String> = rep.invariant_degrees.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "invariant degrees (n <= {}): [{}]", rep.scan_bound, degrees.join(", "));
            if let Some(w) = &rep.leakage_witness {
                let over: Vec<String> = w.overflow.iter().map(format_rational).collect();
                let _ = writeln!(out, "leakage at degree {}: column {} -> [{}]", w.degree, w.column, over.join(", "));
            }
        }
        CommandResult::Spectrum(s) => {
            let _ = writeln!(out, "realization: {}, degree {}", s.realization, s.degree);
            let _ = writeln!(out, "characteristic polynomial: {}", s.char_poly);
            for pair in &s.eigenpairs {
                let v = match &pair.eigenvector {
                    EigenVector::Exact(v) => v.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                    EigenVector::Numeric(v) if v.iter().all(|z| z.im == 0.0) => {
                        v.iter().map(|z| format!("{:.15}", z.re)).collect::<Vec<_>>().join(", ")
                    }
                    EigenVector::Numeric(v) => v
                        .iter()
                        .map(|z| format!("{:.15}{:+.15}i", z.re, z.im))
                        .collect::<Vec<_>>()
                        .join(", "),
                };
                let _ = writeln!(out, "  {}  [{v}]", eigenvalue_text(&pair.eigenvalue));
            }
        }
        CommandResult::Isospectral(rep) => {
            let _ = writeln!(out, "degree {}: {}", rep.degree, if rep.equal { "isospectral" } else { "NOT isospectral" });
            for e in &rep.entries {
                let _ = writeln!(out, "  {:<16} {}", e.realization, e.char_poly);
            }
        }
        CommandResult::Catalog(c) => {
            for e in &c.operators {
                let params: Vec<String> = e
                    .params
                    .iter()
                    .map(|p| match p.default {
                        Some(d) => format!("{}={d}", p.name),
                        None => p.name.to_string(),
                    })
                    .collect();
                let _ = writeln!(out, "{:<9} {:<6} ({})  {}", e.name, format!("{:?}", e.family).to_uppercase(), params.join(", "), e.form);
            }
        }
    }
}

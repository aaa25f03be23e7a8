//! Failures mapped onto process exit codes.

use fockspec::catalog::CatalogError;
use fockspec::dsl::{DslError, LowerError};
use fockspec::realization::RealizationError;
use fockspec::spectra::{EigenvectorError, RootError, SpectrumError};
use fockspec::WeylError;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BINDING: i32 = 2;
pub const EXIT_LEAKAGE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    /// Structured context for the JSON diagnostics, such as a leakage witness.
    pub detail: Option<Value>,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self { code, kind, message: message.into(), detail: None }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, "usage", message)
    }

    pub fn binding(message: impl Into<String>) -> Self {
        Self::new(EXIT_BINDING, "binding", message)
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        Self::new(EXIT_USAGE, "degree_overflow", e.to_string())
    }
}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Parse(p) => Self::new(EXIT_USAGE, "parse", p.to_string())
                .with_detail(json!({ "position": p.position() })),
            DslError::Lower(LowerError::Unbound { name, span }) => {
                Self::binding(format!("unbound parameter `{name}` at column {}", span.start + 1))
                    .with_detail(json!({ "parameter": name }))
            }
            DslError::Lower(LowerError::Weyl(w)) => w.into(),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownOperator(_) => Self::usage(e.to_string()),
            CatalogError::ConstraintViolation { degree, ref residual } => {
                let detail = json!({ "degree": degree, "residual": residual });
                Self::new(EXIT_LEAKAGE, "constraint_violation", e.to_string()).with_detail(detail)
            }
            CatalogError::Weyl(w) => w.into(),
            CatalogError::MissingParam(_)
            | CatalogError::UnexpectedParam { .. }
            | CatalogError::NotADegree { .. }
            | CatalogError::NotHeun => Self::binding(e.to_string()),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        let message = e.to_string();
        match e {
            SpectrumError::Leakage { degree, column, overflow } => {
                let coeffs: Vec<String> = overflow.coeffs().iter().map(fockspec::format_rational).collect();
                Self::new(EXIT_LEAKAGE, "leakage", message).with_detail(json!({
                    "leakage_witness": { "degree": degree, "column": column, "overflow": coeffs }
                }))
            }
            SpectrumError::Realization(r) => r.into(),
            SpectrumError::Roots(RootError::BadTolerance(_)) => Self::usage(message),
            SpectrumError::Roots(RootError::NonConvergence { partial, .. }) => {
                let partial = serde_json::to_value(partial).unwrap_or(Value::Null);
                Self::new(EXIT_NUMERIC, "non_convergence", message).with_detail(json!({ "partial": partial }))
            }
            SpectrumError::Roots(RootError::ZeroPolynomial) => Self::new(EXIT_NUMERIC, "non_convergence", message),
            SpectrumError::Eigenvector(EigenvectorError::NotAnEigenvalue(_)) => {
                Self::new(EXIT_NUMERIC, "eigenvector", message)
            }
            SpectrumError::Eigenvector(EigenvectorError::Breakdown { .. }) => {
                Self::new(EXIT_NUMERIC, "non_convergence", message)
            }
        }
    }
}

//! Run configuration: built-in defaults, then an optional `key = value` file,
//! then command-line flags.

use std::path::Path;

use fockspec::rational::{format_rational, parse_rational, rat, serde_text, Rational};
use fockspec::solvability::DEFAULT_SCAN_BOUND;
use fockspec::spectra::roots::{DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use fockspec::spectra::{format_float, RootConfig};
use fockspec::weyl::DEFAULT_DEGREE_CAP;
use serde::{Serialize, Serializer};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub degree_cap: u32,
    #[serde(serialize_with = "float_text")]
    pub tol: f64,
    pub max_iter: usize,
    pub nmax: u32,
    pub format: Format,
    #[serde(with = "serde_text::vec")]
    pub deltas: Vec<Rational>,
    #[serde(with = "serde_text::vec")]
    pub qs: Vec<Rational>,
    pub fibers: Vec<u32>,
}

fn float_text<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_float(*x))
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            degree_cap: DEFAULT_DEGREE_CAP,
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
            nmax: DEFAULT_SCAN_BOUND,
            format: Format::Json,
            deltas: vec![rat(1, 1), rat(1, 3)],
            qs: vec![rat(2, 1), rat(1, 2)],
            fibers: vec![0],
        }
    }
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub degree_cap: Option<u32>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub nmax: Option<u32>,
    pub format: Option<Format>,
    pub deltas: Option<Vec<String>>,
    pub qs: Option<Vec<String>>,
    pub fibers: Option<Vec<u32>>,
}

fn rationals(key: &str, items: &[String]) -> Result<Vec<Rational>, CliError> {
    items
        .iter()
        .map(|s| parse_rational(s.trim()).map_err(|e| CliError::usage(format!("{key}: {e}"))))
        .collect()
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::usage(format!("config key `{key}`: cannot parse `{v}`")))
}

impl RunConfig {
    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "degree_cap" => self.degree_cap = number(key, value)?,
                "tol" => self.tol = number(key, value)?,
                "max_iter" => self.max_iter = number(key, value)?,
                "nmax" => self.nmax = number(key, value)?,
                "format" => {
                    self.format = match value {
                        "json" => Format::Json,
                        "text" => Format::Text,
                        _ => return Err(CliError::usage(format!("config key `format`: unknown format `{value}`"))),
                    }
                }
                "deltas" => self.deltas = rationals(key, &split_list(value))?,
                "qs" => self.qs = rationals(key, &split_list(value))?,
                "fibers" => {
                    self.fibers = split_list(value)
                        .iter()
                        .map(|v| number(key, v))
                        .collect::<Result<_, _>>()?
                }
                _ => return Err(CliError::usage(format!("config line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(v) = o.degree_cap {
            self.degree_cap = v;
        }
        if let Some(v) = o.tol {
            self.tol = v;
        }
        if let Some(v) = o.max_iter {
            self.max_iter = v;
        }
        if let Some(v) = o.nmax {
            self.nmax = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.deltas {
            self.deltas = rationals("--deltas", v)?;
        }
        if let Some(v) = &o.qs {
            self.qs = rationals("--qs", v)?;
        }
        if let Some(v) = &o.fibers {
            self.fibers = v.clone();
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.degree_cap < 1 || self.max_iter < 1 {
            return Err(CliError::usage("degree cap and iteration cap must be at least 1"));
        }
        if let Some(d) = self.deltas.iter().find(|d| **d == rat(0, 1)) {
            return Err(CliError::usage(format!("lattice spacing {} must be nonzero", format_rational(d))));
        }
        Ok(())
    }

    pub fn load(file: Option<&Path>, o: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_file_text(&text)?;
        }
        cfg.apply_overrides(o)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn roots(&self) -> RootConfig {
        RootConfig {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_file_text("# comment\ntol = 1e-9\ndeltas = 1/2, 3\nfibers=1,2\nformat = text\n")
            .unwrap();
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.deltas, vec![rat(1, 2), rat(3, 1)]);
        assert_eq!(cfg.fibers, vec![1, 2]);
        let o = Overrides {
            tol: Some(1e-6),
            format: Some(Format::Json),
            ..Default::default()
        };
        cfg.apply_overrides(&o).unwrap();
        assert_eq!((cfg.tol, cfg.format), (1e-6, Format::Json));
        assert_eq!(cfg.deltas, vec![rat(1, 2), rat(3, 1)]);
    }

    #[test]
    fn invalid_settings() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_file_text("colour = red").is_err());
        assert!(cfg.apply_file_text("tol").is_err());
        cfg.tol = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig { degree_cap: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg.degree_cap = 4;
        cfg.deltas = vec![rat(0, 1)];
        assert!(cfg.validate().is_err());
    }
}

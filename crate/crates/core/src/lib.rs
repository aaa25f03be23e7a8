//! Heisenberg-Weyl normal ordering, realizations of `[a, b] = 1`, exact and
//! quasi-exact solvability, and polynomial-sector spectra.

pub mod catalog;
pub mod dsl;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod realization;
pub mod solvability;
pub mod spectra;
pub mod weyl;

use thiserror::Error;

pub use catalog::{CatalogError, OpSpec};
pub use dsl::{parse, print_canonical, Bindings, DslError, LowerError, OpAst, ParseError};
pub use matrix::RatMatrix;
pub use rational::{format_rational, parse_rational, Rational};
pub use realization::{Realization, RealizationError};
pub use solvability::{classify, QesCoeffs, SolvabilityReport};
pub use spectra::{
    isospectral_check, spectrum, CharPoly, Eigenvalue, IsospectralReport, RootConfig, Spectrum,
    SpectrumError,
};
pub use weyl::{FlagMatrix, FockVector, WeylElement, WeylError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

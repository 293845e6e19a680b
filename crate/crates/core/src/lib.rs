//! Bound states of a Dunkl-deformed radial Schrödinger equation confined by a
//! Deng-Fan-form molecular well, computed three independent ways and
//! cross-checked.
//!
//! The radial operator carries a Dunkl first-derivative term `(2μ+1)/r` and a
//! μ-dependent centrifugal barrier. Its bound-state spectrum is computed via
//!
//! 1. a closed-form expression from the parametric Nikiforov–Uvarov reduction
//!    after a Pekeris approximation of the centrifugal term
//!    ([`nu::energy_closed_form`]),
//! 2. numerical roots of the hypergeometric series-termination condition
//!    ([`nu::energy_self_consistent`]), and
//! 3. a finite-difference eigensolver for the radial equation itself
//!    ([`oracle::fd_eigensolve`]), which acts as the neutral referee.
//!
//! The analytic routes are reproduced exactly as printed, including their
//! internal inconsistencies; measuring where the three routes agree and where
//! they do not is the job of the [`validate`] module and the `ddf validate`
//! command. All quantities are in Hartree atomic units (ħ = 1).
//!
//! A narrative guide with runnable examples lives under `book/`; its code
//! blocks are compiled as doc-tests of this crate.

pub mod linalg;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod pekeris;
pub mod quadrature;
pub mod validate;
pub mod wavefunction;

pub use model::{
    deng_fan_potential, morse_potential, CentrifugalConvention, DunklParams, MolecularParams,
    QuantumNumbers, HBAR,
};

/// Errors surfaced by the solver library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A constructor argument violated its domain.
    #[error("parameter `{name}` must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// An operation defined only for r > 0 was called with r ≤ 0.
    #[error("radius must be positive, got r = {r}")]
    NonPositiveRadius { r: f64 },

    /// A square-root argument went negative, so the state's exponent is not real.
    #[error("complex exponent: alpha8 = {alpha8} is negative")]
    ComplexExponent { alpha8: f64 },

    /// No usable bound state exists for these quantum numbers.
    #[error("no bound state for n = {n}, ell = {ell}, mu = {mu}: {detail}")]
    NoBoundState {
        n: u32,
        ell: u32,
        mu: f64,
        detail: String,
    },

    /// A normalization integral does not converge (non-positive decay exponent).
    #[error("divergent normalization integral: {reason}")]
    DivergentNorm { reason: &'static str },

    /// The finite-difference eigensolver could not certify its accuracy.
    #[error("finite-difference accuracy failure: {details}")]
    Accuracy { details: String },

    /// A grid or quadrature specification is unusable.
    #[error("invalid grid: {details}")]
    InvalidGrid { details: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Canonical floating-point rendering for emitted tables: 12 significant
/// digits, scientific notation, locale-independent. NaN prints as `nan`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

// The guide's code blocks double as doc-tests so the book cannot drift from
// the API. `cargo test --doc` runs them.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/potential.md")]
    mod potential {}
    #[doc = include_str!("../../../book/src/pekeris.md")]
    mod pekeris {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/wavefunctions.md")]
    mod wavefunctions {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

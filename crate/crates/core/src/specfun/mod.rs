//! Special functions and constants needed by the closed forms in the catalog.
//!
//! Everything here is a pure function of its arguments. Each function has a
//! documented validity window; arguments outside it produce a
//! [`SpecFunError`] rather than a silently inaccurate value.

mod bessel;
mod erf;
mod gamma;
mod lambert;

pub use bessel::bessel_i;
pub use erf::{erf, erf_complex, erfc, erfc_complex, erfi, erfi_complex, ERF_WINDOW};
pub use gamma::{digamma_half, gamma, gamma_laurent, gamma_reciprocal_asymptotic};
pub use lambert::lambert_w0;

/// Complex carrier for erf/erfc/erfi arguments such as `1/2 + iπ/2`.
pub type ComplexValue = num_complex::Complex64;

/// Mathematical constants, stored to full double precision.
pub mod constants {
    /// Euler–Mascheroni constant γ.
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    pub const PI: f64 = std::f64::consts::PI;
    /// Apéry's constant ζ(3); only used by the Laurent coefficient of Γ.
    pub const APERY_ZETA3: f64 = 1.202_056_903_159_594_3;
    pub const SQRT_PI: f64 = 1.772_453_850_905_516;
    pub const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
}

/// Snapshot of the constants as a value, for callers that want to pass them around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub euler_gamma: f64,
    pub pi: f64,
    pub apery_zeta3: f64,
    pub sqrt_pi: f64,
}

impl Constants {
    pub const fn new() -> Self {
        Self {
            euler_gamma: constants::EULER_GAMMA,
            pi: constants::PI,
            apery_zeta3: constants::APERY_ZETA3,
            sqrt_pi: constants::SQRT_PI,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("{function}: argument {argument} outside domain ({requirement})")]
    Domain {
        function: &'static str,
        argument: String,
        requirement: &'static str,
    },
    #[error("{function}: no convergence after {iterations} iterations at {argument}")]
    NoConvergence {
        function: &'static str,
        argument: String,
        iterations: usize,
    },
}

impl SpecFunError {
    pub(crate) fn domain(function: &'static str, argument: impl ToString, requirement: &'static str) -> Self {
        SpecFunError::Domain {
            function,
            argument: argument.to_string(),
            requirement,
        }
    }
}

//! Generalized Gaussian and Gaussian-like integrals.
//!
//! The crate bundles four layers:
//!
//! * [`specfun`]: Γ, complex erf/erfc/erfi, I_n, Lambert W₀ and constants;
//! * [`quadrature`]: a tanh-sinh / exp-sinh oracle for finite and `[c, ∞)` ranges;
//! * [`catalog`]: every identity as integrand + interval + closed form;
//! * [`verifier`]: certification of each closed form against the oracle, with
//!   JSON / CSV / Markdown reports.
//!
//! [`expr`] parses a small query language (`integral exp(-x^2) dx from 0 to inf`)
//! and matches it against the catalog; [`cli`] drives it all from the command line.

pub mod catalog;
pub mod cli;
pub mod expr;
pub mod quadrature;
pub mod specfun;
pub mod verifier;

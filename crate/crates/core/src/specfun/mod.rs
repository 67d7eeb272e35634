//! Floating-point special functions: Gauss ₂F₁ and Appell F₁ series, the
//! Euler integral, adaptive quadrature, and the densities whose even moments
//! are checked against exact values.

mod density;
mod hypergeometric;
mod quadrature;

use thiserror::Error;

pub use density::{
    beta_diff_density, beta_diff_density_appell, density_power_integral, hyp_half_half_one_minus,
    moment_by_quadrature, t_density, t_density_moment, ANALYTIC_SPLIT_U, LOG_BRANCH_CROSSOVER,
};
pub use hypergeometric::{
    appell_f1, euler_2f1, euler_2f1_quadrature, gauss_2f1, gauss_2f1_log_case, AppellParams,
    SeriesParams, DEFAULT_MAX_TERMS, DEFAULT_TOL,
};
pub use quadrature::{integrate, integrate_weighted, QuadratureResult, DEFAULT_MAX_EVALS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("series did not converge within {terms} terms (partial value {partial})")]
    NoConvergence { terms: usize, partial: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("quadrature tolerance {tol:e} not met after {evaluations} evaluations (value {value}, error estimate {error:e})")]
    ToleranceNotMet { value: f64, error: f64, tol: f64, evaluations: usize },
    #[error("integrand produced a non-finite value")]
    NonFinite,
}

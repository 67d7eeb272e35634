//! Exact and numerical verification of combinatorial identities obtained
//! from moments of gamma and beta random variables.
//!
//! * [`exact`]: big rationals and the π-graded value algebra.
//! * [`identities`]: the identity registry, exact verifiers and the
//!   corrected arcsine-moment series.
//! * [`specfun`]: floating-point ₂F₁, Appell F₁, densities and quadrature.
//! * [`montecarlo`]: seeded samplers and moment z-tests.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod exact;
pub mod identities;
pub mod montecarlo;
pub mod specfun;

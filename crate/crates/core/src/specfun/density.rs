//! Density of `X = Y₁ - Y₂` for independent arcsine (`Be(½, ½)`) variables,
//! `f(x) = ₂F₁(½, ½; 1; 1 - x²)/π`, and the density of
//! `T = (X₁ - X₂)/(X₁ + X₂)` for independent `Ga(p)` variables,
//! `f_T(t) = (1 - t²)^(p-1)/B(½, p)`.

use std::f64::consts::{LN_2, PI};

use statrs::function::gamma::ln_gamma;

use super::hypergeometric::{appell_f1, gauss_2f1, gauss_2f1_log_case, AppellParams, SeriesParams};
use super::quadrature::{integrate, integrate_weighted, QuadratureResult, DEFAULT_MAX_EVALS};
use super::SpecFunError;

/// Below this `u = x²` the density uses the logarithmic expansion around
/// `u = 0`; above it the plain series in `1 - u`. Both converge like `½^k`
/// at the crossover.
pub const LOG_BRANCH_CROSSOVER: f64 = 0.5;

/// Moments integrate `[0, √ε]` in closed form, `ε` in `u = x²`.
pub const ANALYTIC_SPLIT_U: f64 = 1e-3;

const SERIES_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 10_000;

/// `₂F₁(½, ½; 1; 1 - u)` for `0 < u ≤ 1`.
pub fn hyp_half_half_one_minus(u: f64) -> Result<f64, SpecFunError> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("need 0 < u ≤ 1, got u = {u}")));
    }
    if u < LOG_BRANCH_CROSSOVER {
        gauss_2f1_log_case(0.5, 0.5, u, SERIES_TOL, SERIES_MAX_TERMS)
    } else {
        gauss_2f1(
            SeriesParams::new(0.5, 0.5, 1.0, 1.0 - u)
                .with_tol(SERIES_TOL)
                .with_max_terms(SERIES_MAX_TERMS),
        )
    }
}

fn check_open_interval(x: f64) -> Result<(), SpecFunError> {
    if !(x.abs() < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("density is supported on (-1, 1), got x = {x}")));
    }
    if x == 0.0 {
        return Err(SpecFunError::OutOfDomain("density is infinite at x = 0".to_string()));
    }
    Ok(())
}

pub fn beta_diff_density(x: f64) -> Result<f64, SpecFunError> {
    check_open_interval(x)?;
    Ok(hyp_half_half_one_minus(x * x)? / PI)
}

/// The same density through the piecewise Appell representation
/// `F₁(½; 0, ½; 1; 1-x, 1-x²)/π` on `[0, 1)` and
/// `F₁(½; ½, 0; 1; 1-x², 1+x)/π` on `(-1, 0)`.
///
/// Convergence slows as `x → 0`; intended for cross-checks away from the
/// origin.
pub fn beta_diff_density_appell(x: f64) -> Result<f64, SpecFunError> {
    check_open_interval(x)?;
    let params = if x > 0.0 {
        AppellParams::new(0.5, 0.0, 0.5, 1.0, 1.0 - x, 1.0 - x * x)
    } else {
        AppellParams::new(0.5, 0.5, 0.0, 1.0, 1.0 - x * x, 1.0 + x)
    };
    Ok(appell_f1(params)? / PI)
}

/// `∫₀^h x^k f(x) dx` in closed form from the logarithmic expansion
/// `π² f(x) = Σ_j c_j x^(2j) (d_j - 2 ln x)`, with `c_j = ((½)_j/j!)²` and
/// `d_j = 2ψ(j+1) - 2ψ(j+½)`.
fn near_origin_power_integral(k: u32, h: f64) -> (f64, f64) {
    let ln_h = h.ln();
    let mut c = 1.0;
    let mut d = 4.0 * LN_2;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for j in 0..200u32 {
        if j > 0 {
            let jf = f64::from(j);
            c *= ((jf - 0.5) / jf).powi(2);
            d += 2.0 / jf - 2.0 / (jf - 0.5);
        }
        let q = f64::from(k + 2 * j + 1);
        let hq = h.powf(q) / q;
        let term = c * hq * (d - 2.0 * (ln_h - 1.0 / q));
        sum += term;
        last = term.abs();
        if last < 1e-18 * sum.abs() {
            break;
        }
    }
    (sum / (PI * PI), last / (PI * PI))
}

/// `∫_ε^1 x^k f(x) dx` (or its mirror on `[-1, -ε]` when `negative`) by
/// adaptive quadrature.
fn far_power_integral(k: u32, h: f64, negative: bool, tol: f64) -> Result<QuadratureResult, SpecFunError> {
    let integrand = |x: f64| {
        let density = hyp_half_half_one_minus(x * x).map(|v| v / PI).unwrap_or(f64::NAN);
        x.powi(k as i32) * density
    };
    if negative {
        integrate(integrand, -1.0, -h, tol, DEFAULT_MAX_EVALS)
    } else {
        integrate(integrand, h, 1.0, tol, DEFAULT_MAX_EVALS)
    }
}

fn one_sided(k: u32, negative: bool, tol: f64) -> Result<QuadratureResult, SpecFunError> {
    let h = ANALYTIC_SPLIT_U.sqrt();
    let (near, near_err) = near_origin_power_integral(k, h);
    let near = if negative && k % 2 == 1 { -near } else { near };
    let far = far_power_integral(k, h, negative, tol - near_err)?;
    Ok(QuadratureResult {
        value: near + far.value,
        abs_error_estimate: near_err + far.abs_error_estimate,
        evaluations: far.evaluations,
    })
}

/// `E[X^(2n)] = (2/π) ∫₀¹ x^(2n) ₂F₁(½, ½; 1; 1-x²) dx`.
pub fn moment_by_quadrature(n: u32, tol: f64) -> Result<QuadratureResult, SpecFunError> {
    if !(tol > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    Ok(one_sided(2 * n, false, tol / 2.0)?.scaled(2.0))
}

/// `∫₋₁¹ x^k f(x) dx`, integrating both halves of the support separately.
pub fn density_power_integral(k: u32, tol: f64) -> Result<QuadratureResult, SpecFunError> {
    if !(tol > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let pos = one_sided(k, false, tol / 2.0)?;
    let neg = one_sided(k, true, tol / 2.0)?;
    Ok(QuadratureResult {
        value: pos.value + neg.value,
        abs_error_estimate: pos.abs_error_estimate + neg.abs_error_estimate,
        evaluations: pos.evaluations + neg.evaluations,
    })
}

fn ln_beta_half(p: f64) -> f64 {
    ln_gamma(0.5) + ln_gamma(p) - ln_gamma(p + 0.5)
}

pub fn t_density(t: f64, p: f64) -> Result<f64, SpecFunError> {
    if !(p > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("p must be positive, got {p}")));
    }
    if !(t.abs() < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("density is supported on (-1, 1), got t = {t}")));
    }
    Ok(((p - 1.0) * (1.0 - t * t).ln() - ln_beta_half(p)).exp())
}

/// `∫₋₁¹ t^(2n) (1 - t²)^(p-1) dt / B(½, p)`.
pub fn t_density_moment(n: u32, p: f64, tol: f64) -> Result<QuadratureResult, SpecFunError> {
    if !(p > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("p must be positive, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let scale = 2.0 * (-ln_beta_half(p)).exp();
    let raw = integrate_weighted(
        |t| t.powi(2 * n as i32) * (1.0 + t).powf(p - 1.0),
        0.0,
        1.0,
        1.0,
        p,
        tol / scale,
        DEFAULT_MAX_EVALS,
    )?;
    Ok(raw.scaled(scale))
}

use statrs::function::gamma::{digamma, ln_gamma};

use super::quadrature::{integrate_weighted, QuadratureResult, DEFAULT_MAX_EVALS};
use super::SpecFunError;

/// Consecutive small terms required before a series is declared converged.
const SMALL_TERMS_TO_STOP: usize = 3;

pub const DEFAULT_TOL: f64 = 1e-16;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Parameters of `₂F₁(a, b; c; z)` and the stopping rule for its series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl SeriesParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z, tol: DEFAULT_TOL, max_terms: DEFAULT_MAX_TERMS }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }
}

/// Parameters of Appell's `F₁(a; b₁, b₂; c; x₁, x₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AppellParams {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c: f64,
    pub x1: f64,
    pub x2: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl AppellParams {
    pub fn new(a: f64, b1: f64, b2: f64, c: f64, x1: f64, x2: f64) -> Self {
        Self { a, b1, b2, c, x1, x2, tol: DEFAULT_TOL, max_terms: DEFAULT_MAX_TERMS }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Index past which `(v)_k` vanishes, when `v` is a nonpositive integer.
fn terminating_index(v: f64) -> Option<usize> {
    is_nonpositive_integer(v).then(|| (-v) as usize)
}

fn check_common(tol: f64, max_terms: usize) -> Result<(), SpecFunError> {
    if !(tol > 0.0) || max_terms == 0 {
        return Err(SpecFunError::InvalidParameter(format!(
            "need tol > 0 and max_terms ≥ 1, got tol = {tol}, max_terms = {max_terms}"
        )));
    }
    Ok(())
}

/// Tracks the "three consecutive small terms" stopping rule.
struct Convergence {
    tol: f64,
    small_run: usize,
}

impl Convergence {
    fn new(tol: f64) -> Self {
        Self { tol, small_run: 0 }
    }

    fn update(&mut self, term: f64, sum: f64) -> bool {
        if term.abs() <= self.tol * sum.abs() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= SMALL_TERMS_TO_STOP
    }
}

/// Gauss series `Σ (a)_k (b)_k / ((c)_k k!) z^k` for `|z| < 1`.
pub fn gauss_2f1(params: SeriesParams) -> Result<f64, SpecFunError> {
    let SeriesParams { a, b, c, z, tol, max_terms } = params;
    check_common(tol, max_terms)?;
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::InvalidParameter(format!("c = {c} is a pole of ₂F₁")));
    }
    if !(z.abs() < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("series needs |z| < 1, got z = {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut rule = Convergence::new(tol);
    for k in 0..max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || rule.update(term, sum) {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NoConvergence { terms: max_terms, partial: sum })
}

/// `₂F₁(a, b; a+b; 1-u)` for `0 < u < 1` by the logarithmic expansion
///
/// ```text
/// Γ(a+b)/(Γ(a)Γ(b)) Σ_k (a)_k (b)_k/(k!)² [2ψ(k+1) - ψ(a+k) - ψ(b+k) - ln u] u^k
/// ```
///
/// which converges geometrically in `u` and carries the `ln u` blow-up of the
/// `c = a + b` case explicitly. For `a = b = ½` the leading term is
/// `-ln(u/16)/π`.
pub fn gauss_2f1_log_case(a: f64, b: f64, u: f64, tol: f64, max_terms: usize) -> Result<f64, SpecFunError> {
    check_common(tol, max_terms)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("log expansion needs 0 < u < 1, got u = {u}")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(SpecFunError::InvalidParameter("a and b must not be nonpositive integers".into()));
    }
    let prefactor = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)).exp();
    let ln_u = u.ln();
    let mut coeff = 1.0;
    let mut psi_1 = digamma(1.0);
    let mut psi_a = digamma(a);
    let mut psi_b = digamma(b);
    let mut sum = 2.0 * psi_1 - psi_a - psi_b - ln_u;
    let mut rule = Convergence::new(tol);
    for k in 0..max_terms {
        let kf = k as f64;
        coeff *= (a + kf) * (b + kf) / ((kf + 1.0) * (kf + 1.0)) * u;
        psi_1 += 1.0 / (kf + 1.0);
        psi_a += 1.0 / (a + kf);
        psi_b += 1.0 / (b + kf);
        let term = coeff * (2.0 * psi_1 - psi_a - psi_b - ln_u);
        sum += term;
        if term == 0.0 || rule.update(term, sum) {
            return Ok(prefactor * sum);
        }
    }
    Err(SpecFunError::NoConvergence { terms: max_terms, partial: prefactor * sum })
}

/// Euler integral
/// `∫₀¹ y^(b-1) (1-y)^(c-b-1) (1-zy)^(-a) dy / B(b, c-b)`
/// with the endpoint powers absorbed by substitution.
pub fn euler_2f1_quadrature(params: SeriesParams) -> Result<QuadratureResult, SpecFunError> {
    let SeriesParams { a, b, c, z, tol, .. } = params;
    if !(c > b && b > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("Euler integral needs c > b > 0, got b = {b}, c = {c}")));
    }
    if !(z < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!("Euler integral needs z < 1, got z = {z}")));
    }
    let ln_beta = ln_gamma(b) + ln_gamma(c - b) - ln_gamma(c);
    let norm = (-ln_beta).exp();
    // the quadrature target is absolute; scale it to the unnormalised integral
    let quad_tol = tol.max(1e-15) / norm;
    let raw = integrate_weighted(|y| (1.0 - z * y).powf(-a), 0.0, 1.0, b, c - b, quad_tol, DEFAULT_MAX_EVALS)?;
    Ok(raw.scaled(norm))
}

pub fn euler_2f1(params: SeriesParams) -> Result<f64, SpecFunError> {
    euler_2f1_quadrature(params).map(|r| r.value)
}

/// Appell `F₁` double series, summed by anti-diagonals `m + k = s`:
///
/// ```text
/// Σ_s (a)_s/(c)_s Σ_{m+k=s} (b₁)_m x₁^m/m! · (b₂)_k x₂^k/k!
/// ```
///
/// A nonpositive-integer `b₁` or `b₂` truncates the corresponding index, so
/// `b₁ = 0` collapses the double sum onto the `₂F₁` in `x₂`.
pub fn appell_f1(params: AppellParams) -> Result<f64, SpecFunError> {
    let AppellParams { a, b1, b2, c, x1, x2, tol, max_terms } = params;
    check_common(tol, max_terms)?;
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::InvalidParameter(format!("c = {c} is a pole of F₁")));
    }
    if !(x1.abs() < 1.0 && x2.abs() < 1.0) {
        return Err(SpecFunError::OutOfDomain(format!(
            "series needs |x₁|, |x₂| < 1, got x₁ = {x1}, x₂ = {x2}"
        )));
    }
    let m_cap = terminating_index(b1);
    let k_cap = terminating_index(b2);
    // u[m] = (b₁)_m x₁^m / m!, v[k] = (b₂)_k x₂^k / k!
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut diagonal_factor = 1.0;
    let mut sum = 1.0;
    let mut rule = Convergence::new(tol);
    for s in 1..=max_terms {
        let prev = (s - 1) as f64;
        diagonal_factor *= (a + prev) / (c + prev);
        if m_cap.is_none_or(|cap| s <= cap) {
            let next = u[s - 1] * (b1 + prev) / (prev + 1.0) * x1;
            u.push(next);
        }
        if k_cap.is_none_or(|cap| s <= cap) {
            let next = v[s - 1] * (b2 + prev) / (prev + 1.0) * x2;
            v.push(next);
        }
        let m_lo = s.saturating_sub(v.len() - 1);
        let m_hi = s.min(u.len() - 1);
        let inner: f64 = (m_lo..=m_hi).map(|m| u[m] * v[s - m]).sum();
        let block = diagonal_factor * inner;
        sum += block;
        if diagonal_factor == 0.0 || (m_lo > m_hi) || rule.update(block, sum) {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NoConvergence { terms: max_terms, partial: sum })
}

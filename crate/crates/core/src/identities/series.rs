//! Partial sums of the arcsine-moment series
//!
//! ```text
//! Σ_k (½)_k² Γ(n+½) / (k! Γ(n+k+3/2))  =  π · C(2n, n)² / 16ⁿ
//! ```
//!
//! Every term is rational because `Γ(n+½)/Γ(n+k+3/2) = 1/(n+½)_{k+1}`, so the
//! partial sums are exact and only the target carries a factor of π.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IdentityError;
use crate::exact::rational::pi_enclosure;
use crate::exact::{central_binomial, PiGradedValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTally {
    pub n: u64,
    pub terms_used: u64,
    /// sum of the first `terms_used` terms
    pub partial_sum: Rational,
    /// the `terms_used`-th term
    pub last_term: Rational,
    /// `last_term · (terms_used + 1)/(n + ½)`
    pub tail_bound: Rational,
    /// `π · C(2n, n)²/16ⁿ`
    pub target: PiGradedValue,
}

impl SeriesTally {
    /// Rational coefficient `c` of the target `c·π`.
    pub fn target_coefficient(&self) -> Rational {
        self.target.coefficient(2)
    }

    /// `partial ≤ target ≤ partial + tail_bound`, decided with a rational
    /// enclosure of π so the comparison never touches floating point.
    pub fn brackets_target(&self) -> bool {
        let (pi_lo, pi_hi) = pi_enclosure();
        let c = self.target_coefficient();
        self.partial_sum <= &c * pi_lo && &c * pi_hi <= &self.partial_sum + &self.tail_bound
    }

    pub fn target_f64(&self) -> f64 {
        self.target.to_f64()
    }

    /// `partial_sum / target` in floating point.
    pub fn ratio_to_target(&self) -> f64 {
        PiGradedValue::rational(self.partial_sum.clone())
            .checked_div(&self.target)
            .map(|v| v.to_f64())
            .unwrap_or(f64::NAN)
    }
}

/// Sums the first `terms` terms exactly.
///
/// With `t_0 = 2/(2n+1)` and
/// `t_k/t_{k-1} = (2k-1)² / (2k(2n+2k+1))`, the sum is carried as an
/// unreduced fraction over the running product of denominators and reduced
/// once at the end.
pub fn series_partial_sum(n: u64, terms: u64) -> Result<SeriesTally, IdentityError> {
    if terms == 0 {
        return Err(IdentityError::InvalidParameter {
            id: super::IdentityId::Remark2Series,
            reason: "at least one term is required".to_string(),
        });
    }
    let mut term_num = BigInt::from(2u32);
    let mut den = BigInt::from(2 * n + 1);
    let mut sum_num = term_num.clone();
    for k in 1..terms {
        let odd = BigInt::from(2 * k - 1);
        let step = BigInt::from(2 * k) * BigInt::from(2 * n + 2 * k + 1);
        term_num *= &odd * &odd;
        sum_num = sum_num * &step + &term_num;
        den *= step;
    }
    let partial_sum = Rational::new(sum_num, den.clone());
    let last_term = Rational::new(term_num, den);
    let tail_bound = &last_term
        * Rational::new(BigInt::from(2 * (terms + 1)), BigInt::from(2 * n + 1));
    let c = central_binomial(n);
    let target = PiGradedValue::monomial(
        Rational::new(&c * &c, BigInt::one() << (4 * n)),
        2,
    );
    Ok(SeriesTally {
        n,
        terms_used: terms,
        partial_sum,
        last_term,
        tail_bound,
        target,
    })
}

/// Ratio `t_{k+1}/t_k` of the series written without the `1/k!` factor,
/// `(k+½)²/(n+k+3/2)`. It grows without bound, so that form diverges.
pub fn printed_term_ratio(n: u64, k: u64) -> Rational {
    let a = Rational::new(BigInt::from(2 * k + 1), BigInt::from(2));
    let b = Rational::new(BigInt::from(2 * n + 2 * k + 3), BigInt::from(2));
    if b.is_zero() {
        return Rational::zero();
    }
    &a * &a / b
}

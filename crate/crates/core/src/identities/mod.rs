//! Registry of the binomial, gamma and beta identities, with exact
//! evaluators for both sides of each.
//!
//! Every side is computed in [`PiGradedValue`] arithmetic; gamma ratios with
//! shifted arguments are rewritten as Pochhammer symbols, so the parametric
//! identities accept any positive rational `p`.

mod compositions;
mod series;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    binomial, central_binomial, factorial, gamma_value, mgf_even_coefficient, pochhammer,
    ExactError, HalfInteger, PiGradedValue, Rational,
};

pub use compositions::{enumerate_compositions, Compositions};
pub use series::{printed_term_ratio, series_partial_sum, SeriesTally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum IdentityId {
    CentralConvolution,
    AlternatingConvolution,
    MultiConvolution,
    Gould660,
    GammaEvenMoment,
    GammaHalfRatio,
    Brychkov,
    PEqualsN,
    BetaMoment,
    HalfBetaBinomial,
    VignatMollFactorization,
    Remark2Series,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        IdentityId::CentralConvolution,
        IdentityId::AlternatingConvolution,
        IdentityId::MultiConvolution,
        IdentityId::Gould660,
        IdentityId::GammaEvenMoment,
        IdentityId::GammaHalfRatio,
        IdentityId::Brychkov,
        IdentityId::PEqualsN,
        IdentityId::BetaMoment,
        IdentityId::HalfBetaBinomial,
        IdentityId::VignatMollFactorization,
        IdentityId::Remark2Series,
    ];

    pub const fn tag(self) -> &'static str {
        match self {
            IdentityId::CentralConvolution => "central-convolution",
            IdentityId::AlternatingConvolution => "alternating-convolution",
            IdentityId::MultiConvolution => "multi-convolution",
            IdentityId::Gould660 => "gould-6.60",
            IdentityId::GammaEvenMoment => "gamma-even-moment",
            IdentityId::GammaHalfRatio => "gamma-half-ratio",
            IdentityId::Brychkov => "brychkov",
            IdentityId::PEqualsN => "p-equals-n",
            IdentityId::BetaMoment => "beta-moment",
            IdentityId::HalfBetaBinomial => "half-beta-binomial",
            IdentityId::VignatMollFactorization => "vignat-moll-factorization",
            IdentityId::Remark2Series => "remark2-series",
        }
    }

    /// What the optional parameter slot means for this identity, if anything.
    pub const fn parameter(self) -> Parameter {
        match self {
            IdentityId::GammaEvenMoment | IdentityId::BetaMoment => Parameter::Shape,
            IdentityId::MultiConvolution => Parameter::Parts,
            _ => Parameter::None,
        }
    }

    /// Implementation remarks that belong in every report for this identity.
    pub const fn note(self) -> Option<&'static str> {
        match self {
            IdentityId::CentralConvolution => Some(
                "summation starts at k = 0; with the lower index k = 1 the sum is 4^n - C(2n,n), not 4^n",
            ),
            IdentityId::Gould660 => {
                Some("the common factor 1/4^(2n) is cancelled; both sides are reported as integers")
            }
            IdentityId::Remark2Series => Some(
                "terms carry the 1/k! factor; without it the term ratio (k+1/2)^2/(n+k+3/2) is unbounded and the series diverges",
            ),
            _ => None,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

impl From<IdentityId> for String {
    fn from(id: IdentityId) -> String {
        id.tag().to_string()
    }
}

impl TryFrom<String> for IdentityId {
    type Error = IdentityError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parameter {
    None,
    /// positive rational shape `p`
    Shape,
    /// positive integer number of factors `m`
    Parts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("{0} requires a parameter")]
    MissingParameter(IdentityId),
    #[error("invalid parameter for {id}: {reason}")]
    InvalidParameter { id: IdentityId, reason: String },
    #[error("{id} is not defined at n = {n}")]
    InvalidOrder { id: IdentityId, n: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Outcome of one exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub n: u64,
    #[serde(with = "opt_rational")]
    pub p: Option<Rational>,
    pub lhs: PiGradedValue,
    pub rhs: PiGradedValue,
    pub equal: bool,
    pub residual: PiGradedValue,
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn approx_lhs(&self) -> f64 {
        self.lhs.to_f64()
    }

    pub fn approx_rhs(&self) -> f64 {
        self.rhs.to_f64()
    }
}

pub(crate) mod opt_rational {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(p: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match p {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}

fn q(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn sign(k: u64) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn shape_param(id: IdentityId, p: Option<&Rational>) -> Result<Rational, IdentityError> {
    let p = p.ok_or(IdentityError::MissingParameter(id))?;
    if !p.is_positive() {
        return Err(IdentityError::InvalidParameter {
            id,
            reason: format!("p must be positive, got {p}"),
        });
    }
    Ok(p.clone())
}

fn parts_param(id: IdentityId, p: Option<&Rational>) -> Result<usize, IdentityError> {
    let p = p.ok_or(IdentityError::MissingParameter(id))?;
    let bad = || IdentityError::InvalidParameter {
        id,
        reason: format!("m must be a positive integer, got {p}"),
    };
    if !p.is_integer() || !p.is_positive() {
        return Err(bad());
    }
    p.to_integer().to_usize().ok_or_else(bad)
}

/// Exact value of one side of `id` at order `n`.
///
/// `p` is the shape for `gamma-even-moment`/`beta-moment`, the number of
/// factors `m` for `multi-convolution`, and ignored elsewhere.
pub fn eval_side(
    id: IdentityId,
    side: Side,
    n: u64,
    p: Option<&Rational>,
) -> Result<PiGradedValue, IdentityError> {
    use IdentityId::*;
    use Side::*;

    let value = match (id, side) {
        (CentralConvolution, Lhs) => {
            let s: BigInt = (0..=n).map(|k| central_binomial(k) * central_binomial(n - k)).sum();
            PiGradedValue::rational(q(s))
        }
        (CentralConvolution, Rhs) => PiGradedValue::rational(q(pow2(2 * n))),

        (AlternatingConvolution, Lhs) => {
            let s: BigInt = (0..=n)
                .map(|k| sign(k) * central_binomial(k) * central_binomial(n - k))
                .sum();
            PiGradedValue::rational(q(s))
        }
        (AlternatingConvolution, Rhs) => {
            if n.is_multiple_of(2) {
                PiGradedValue::rational(q(pow2(n) * binomial(n, (n / 2) as i64)))
            } else {
                PiGradedValue::zero()
            }
        }

        (MultiConvolution, Lhs) => {
            let m = parts_param(id, p)?;
            let table: Vec<BigInt> = (0..=n).map(central_binomial).collect();
            let s: BigInt = enumerate_compositions(n, m)
                .map(|parts| parts.iter().map(|&k| &table[k as usize]).product::<BigInt>())
                .sum();
            PiGradedValue::rational(q(s))
        }
        (MultiConvolution, Rhs) => {
            let m = parts_param(id, p)?;
            // 4^n/n! · Γ(n + m/2)/Γ(m/2)
            let half_m = Rational::new(BigInt::from(m), BigInt::from(2));
            let v = q(pow2(2 * n)) * pochhammer(&half_m, n) / q(factorial(n));
            PiGradedValue::rational(v)
        }

        (Gould660, Lhs) => {
            let s: BigInt = (0..=2 * n)
                .map(|k| {
                    sign(k)
                        * binomial(2 * n, k as i64)
                        * central_binomial(k)
                        * central_binomial(2 * n - k)
                })
                .sum();
            PiGradedValue::rational(q(s))
        }
        (Gould660, Rhs) => {
            let c = central_binomial(n);
            PiGradedValue::rational(q(&c * &c))
        }

        (GammaEvenMoment, Lhs) => {
            let p = shape_param(id, p)?;
            let s: Rational = (0..=n)
                .map(|k| {
                    q(binomial(2 * n, 2 * k as i64))
                        * pochhammer(&p, 2 * k)
                        * pochhammer(&p, 2 * n - 2 * k)
                })
                .sum();
            PiGradedValue::rational(s)
        }
        (GammaEvenMoment, Rhs) => {
            let p = shape_param(id, p)?;
            let sum_moment = pochhammer(&(&p + &p), 2 * n);
            let diff_moment = q(factorial(2 * n)) * mgf_even_coefficient(&p, n)?;
            PiGradedValue::rational((sum_moment + diff_moment) * half())
        }

        (GammaHalfRatio, Lhs) => {
            gamma_value(HalfInteger::half_odd(n as i64))?.checked_div(&gamma_value(HalfInteger::HALF)?)?
        }
        (GammaHalfRatio, Rhs) => {
            PiGradedValue::rational(q(central_binomial(n) * factorial(n)) / q(pow2(2 * n)))
        }

        (Brychkov, Lhs) => {
            let s: BigInt = (0..=n)
                .map(|k| central_binomial(2 * k) * central_binomial(2 * n - 2 * k))
                .sum();
            PiGradedValue::rational(q(s))
        }
        (Brychkov, Rhs) => {
            // 2^(4n-1) + 2^(2n-1) C(2n, n)
            let v = (q(pow2(4 * n)) + q(pow2(2 * n) * central_binomial(n))) * half();
            PiGradedValue::rational(v)
        }

        (PEqualsN, Lhs) => {
            if n == 0 {
                return Err(IdentityError::InvalidOrder { id, n });
            }
            let ni = n as i64;
            let mut s = PiGradedValue::zero();
            for k in 0..=ni {
                let g1 = gamma_value(HalfInteger::integer(ni + 2 * k))?;
                let g2 = gamma_value(HalfInteger::integer(3 * ni - 2 * k))?;
                let c = q(binomial(2 * n, 2 * k));
                s = s + (&g1 * &g2).scale(&c);
            }
            s
        }
        (PEqualsN, Rhs) => {
            if n == 0 {
                return Err(IdentityError::InvalidOrder { id, n });
            }
            let ni = n as i64;
            let g_n = gamma_value(HalfInteger::integer(ni))?;
            let g_2n = gamma_value(HalfInteger::integer(2 * ni))?;
            let g_4n = gamma_value(HalfInteger::integer(4 * ni))?;
            let g_n_sq = &g_n * &g_n;
            let first = g_4n.checked_div(&g_2n)?;
            let second = (&g_2n * &g_2n).checked_div(&g_n_sq)?.scale(&Rational::from_integer(2.into()));
            (&g_n_sq * &(first + second)).scale(&half())
        }

        (BetaMoment, Lhs) => {
            // B(p+k, p)/B(p, p) = (p)_k/(2p)_k
            let p = shape_param(id, p)?;
            let two_p = &p + &p;
            let mut s = Rational::zero();
            let mut ratio = Rational::one();
            let mut weight = BigInt::one();
            for k in 0..=2 * n {
                if k > 0 {
                    ratio = ratio * (&p + q((k - 1).into())) / (&two_p + q((k - 1).into()));
                    weight *= -2;
                }
                s += q(&weight * binomial(2 * n, k as i64)) * &ratio;
            }
            PiGradedValue::rational(s)
        }
        (BetaMoment, Rhs) => {
            // B(n+½, p)/B(½, p) = (½)_n/(p+½)_n
            let p = shape_param(id, p)?;
            let v = pochhammer(&half(), n) / pochhammer(&(&p + half()), n);
            PiGradedValue::rational(v)
        }

        (HalfBetaBinomial, Lhs) => {
            let s: BigInt = (0..=2 * n)
                .map(|k| {
                    sign(k) * binomial(2 * n, k as i64) * central_binomial(k) * pow2(2 * n - k)
                })
                .sum();
            PiGradedValue::rational(q(s))
        }
        (HalfBetaBinomial, Rhs) => PiGradedValue::rational(q(central_binomial(n))),

        (VignatMollFactorization, Lhs) => {
            // E(X₁ - X₂)^(2n) for X_i ~ Ga(½)
            let v = q(factorial(2 * n)) * mgf_even_coefficient(&half(), n)?;
            PiGradedValue::rational(v)
        }
        (VignatMollFactorization, Rhs) => {
            // E(X₁ + X₂)^(2n) · E(Y^(2n)) with X₁ + X₂ ~ Ga(1) and Y arcsine on (-1, 1)
            let sum_moment = gamma_value(HalfInteger::integer(2 * n as i64 + 1))?;
            let arcsine_moment = q(central_binomial(n)) / q(pow2(2 * n));
            sum_moment.scale(&arcsine_moment)
        }

        (Remark2Series, Lhs) => {
            // Σ_k (½)_k² Γ(n+½) / (k! Γ(n+k+3/2))
            //   = Γ(n+½)/Γ(n+3/2) · ₂F₁(½, ½; n+3/2; 1)
            //   = Γ(n+½)² / Γ(n+1)²  by Gauss's summation theorem
            let g = gamma_value(HalfInteger::half_odd(n as i64))?;
            let f = gamma_value(HalfInteger::integer(n as i64 + 1))?;
            (&g * &g).checked_div(&(&f * &f))?
        }
        (Remark2Series, Rhs) => {
            let c = central_binomial(n);
            PiGradedValue::monomial(q(&c * &c) / q(pow2(4 * n)), 2)
        }
    };
    Ok(value)
}

/// Evaluates both sides and compares them coefficient-wise.
pub fn verify(id: IdentityId, n: u64, p: Option<&Rational>) -> Result<IdentityReport, IdentityError> {
    let lhs = eval_side(id, Side::Lhs, n, p)?;
    let rhs = eval_side(id, Side::Rhs, n, p)?;
    let residual = &lhs - &rhs;
    let p = match id.parameter() {
        Parameter::None => None,
        _ => p.cloned(),
    };
    Ok(IdentityReport {
        identity: id,
        n,
        p,
        equal: residual.is_zero(),
        lhs,
        rhs,
        residual,
        note: id.note().map(str::to_string),
    })
}

/// Sample points `j + 1/3`, `j = 0..8n+4`, for certifying an identity between
/// rational functions of `p` whose total degree is at most `4n`.
pub fn p_points(n: u64) -> Vec<Rational> {
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    (0..8 * n + 4).map(|j| q(j.into()) + &third).collect()
}

/// Checks a parametric identity at every point of [`p_points`]; exact agreement
/// at all of them proves it for all `p > 0`.
pub fn verify_in_p(id: IdentityId, n: u64) -> Result<Vec<IdentityReport>, IdentityError> {
    if id.parameter() != Parameter::Shape {
        return Err(IdentityError::InvalidParameter {
            id,
            reason: "not parametric in p".to_string(),
        });
    }
    if n == 0 {
        return Err(IdentityError::InvalidOrder { id, n });
    }
    p_points(n).iter().map(|p| verify(id, n, Some(p))).collect()
}

//! Seeded samplers and Monte Carlo moment estimates compared against exact
//! targets by z-score.

mod moments;
mod rng;
mod samplers;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, Rational};

pub use moments::{
    estimate_even_moment, estimate_odd_moment, exact_moment_target, factorization_check,
    MomentAccumulator, BLOCK_SIZE, MAX_MOMENT_ORDER, MIN_SAMPLES, Z_THRESHOLD,
};
pub use rng::{splitmix64, RngStream, DEFAULT_SEED};
pub use samplers::{sample_beta, sample_gamma, sample_symmetric_arcsine};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonteCarloError {
    #[error("shape parameter must be positive and finite, got {0}")]
    InvalidShape(f64),
    #[error("statistic {0} needs a shape parameter p")]
    MissingShape(StatisticId),
    #[error("at least {MIN_SAMPLES} samples are required, got {0}")]
    TooFewSamples(u64),
    #[error("moment order n = {0} exceeds the supported maximum {MAX_MOMENT_ORDER}")]
    OrderTooHigh(u32),
    #[error("statistic {0} is not supported here")]
    Unsupported(StatisticId),
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The sampled quantity whose moments are estimated. `X₁, X₂ ~ Ga(p)` and
/// `Y₁, Y₂ ~ Be(½, ½)` are independent; `Y` is the arcsine law on (-1, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StatisticId {
    /// `X₁ - X₂`
    GammaDiff,
    /// `X₁ + X₂`
    GammaSum,
    /// `(X₁ - X₂)/(X₁ + X₂)`
    TRatio,
    /// `Y₁ - Y₂`
    BetaDiff,
    /// `Y` alone
    Arcsine,
    /// product of independent estimates of `E(X₁+X₂)^(2n)` and `E Y^(2n)` at p = ½
    Factorization,
}

impl StatisticId {
    pub const ALL: [StatisticId; 6] = [
        StatisticId::GammaDiff,
        StatisticId::GammaSum,
        StatisticId::TRatio,
        StatisticId::BetaDiff,
        StatisticId::Arcsine,
        StatisticId::Factorization,
    ];

    pub const fn tag(self) -> &'static str {
        match self {
            StatisticId::GammaDiff => "gamma-diff",
            StatisticId::GammaSum => "gamma-sum",
            StatisticId::TRatio => "t-ratio",
            StatisticId::BetaDiff => "beta-diff",
            StatisticId::Arcsine => "arcsine",
            StatisticId::Factorization => "factorization",
        }
    }

    pub const fn needs_shape(self) -> bool {
        matches!(self, StatisticId::GammaDiff | StatisticId::GammaSum | StatisticId::TRatio)
    }
}

impl fmt::Display for StatisticId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StatisticId {
    type Err = MonteCarloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StatisticId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| MonteCarloError::UnknownStatistic(s.to_string()))
    }
}

impl From<StatisticId> for String {
    fn from(id: StatisticId) -> String {
        id.tag().to_string()
    }
}

impl TryFrom<String> for StatisticId {
    type Error = MonteCarloError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A Monte Carlo estimate of `E[S^power]` next to its exact value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub statistic_id: StatisticId,
    pub n: u32,
    pub power: u32,
    #[serde(with = "crate::identities::opt_rational")]
    pub p: Option<Rational>,
    pub samples: u64,
    pub mean: f64,
    pub std_error: f64,
    pub exact_target: f64,
    pub z_score: f64,
}

impl SampleStats {
    pub fn passes(&self, threshold: f64) -> bool {
        self.z_score.abs() <= threshold
    }
}

pub(crate) fn z_score(mean: f64, target: f64, std_error: f64) -> f64 {
    if std_error > 0.0 {
        (mean - target) / std_error
    } else if mean == target {
        0.0
    } else {
        f64::INFINITY.copysign(mean - target)
    }
}

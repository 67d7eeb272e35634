use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::samplers::{sample_beta, sample_gamma, sample_symmetric_arcsine};
use super::{z_score, MonteCarloError, RngStream, SampleStats, StatisticId};
use crate::exact::rational::{frac, rational_to_f64};
use crate::exact::{central_binomial, factorial, mgf_even_coefficient, pochhammer, Rational};

pub const MIN_SAMPLES: u64 = 10_000;
pub const MAX_MOMENT_ORDER: u32 = 5;
pub const Z_THRESHOLD: f64 = 5.0;
/// Samples per shard. Shard `i` draws from `stream.substream(i)`, so the
/// result depends on the seed and sample count but not on the thread count.
pub const BLOCK_SIZE: u64 = 1 << 15;

/// Streaming count / mean / sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MomentAccumulator {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl MomentAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Pairwise combination of two disjoint samples.
    pub fn merge(&self, other: &MomentAccumulator) -> MomentAccumulator {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let (na, nb) = (self.count as f64, other.count as f64);
        let delta = other.mean - self.mean;
        MomentAccumulator {
            count,
            mean: self.mean + delta * nb / count as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / count as f64,
        }
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Exact `E[S^power]` for the statistic `S`.
pub fn exact_moment_target(
    statistic: StatisticId,
    power: u32,
    p: Option<&Rational>,
) -> Result<Rational, MonteCarloError> {
    let shape = || -> Result<&Rational, MonteCarloError> {
        let p = p.ok_or(MonteCarloError::MissingShape(statistic))?;
        if !p.is_positive() {
            return Err(MonteCarloError::InvalidShape(rational_to_f64(p)));
        }
        Ok(p)
    };
    let n = u64::from(power / 2);
    let odd = power % 2 == 1;
    let half = frac(1, 2);
    Ok(match statistic {
        StatisticId::GammaSum => pochhammer(&(shape()? * frac(2, 1)), u64::from(power)),
        StatisticId::GammaDiff => {
            let p = shape()?;
            if odd {
                Rational::zero()
            } else {
                Rational::from_integer(factorial(2 * n)) * mgf_even_coefficient(p, n)?
            }
        }
        StatisticId::TRatio => {
            let p = shape()?;
            if odd {
                Rational::zero()
            } else {
                pochhammer(&half, n) / pochhammer(&(p + &half), n)
            }
        }
        _ if odd => Rational::zero(),
        StatisticId::BetaDiff => {
            let c = central_binomial(n);
            Rational::new(&c * &c, BigInt::one() << (4 * n))
        }
        StatisticId::Arcsine => Rational::new(central_binomial(n), BigInt::one() << (2 * n)),
        StatisticId::Factorization => {
            Rational::from_integer(factorial(2 * n)) * mgf_even_coefficient(&half, n)?
        }
    })
}

fn sharded<F>(stream: &RngStream, samples: u64, draw: F) -> MomentAccumulator
where
    F: Fn(&mut ChaCha20Rng) -> f64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let partial: Vec<MomentAccumulator> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let len = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut rng = stream.substream(b).generator();
            let mut acc = MomentAccumulator::default();
            for _ in 0..len {
                acc.push(draw(&mut rng));
            }
            acc
        })
        .collect();
    partial.iter().fold(MomentAccumulator::default(), |acc, b| acc.merge(b))
}

fn validate(statistic: StatisticId, n: u32, samples: u64) -> Result<(), MonteCarloError> {
    if samples < MIN_SAMPLES {
        return Err(MonteCarloError::TooFewSamples(samples));
    }
    if n > MAX_MOMENT_ORDER {
        return Err(MonteCarloError::OrderTooHigh(n));
    }
    if statistic == StatisticId::Factorization {
        return Err(MonteCarloError::Unsupported(statistic));
    }
    Ok(())
}

fn estimate(
    statistic: StatisticId,
    n: u32,
    power: u32,
    p: Option<&Rational>,
    samples: u64,
    stream: &RngStream,
) -> Result<SampleStats, MonteCarloError> {
    validate(statistic, n, samples)?;
    let target = exact_moment_target(statistic, power, p)?;
    let p = if statistic.needs_shape() { p.cloned() } else { None };
    let shape = p.as_ref().map(rational_to_f64).unwrap_or(0.5);
    let k = power as i32;

    // shapes were validated by the exact target, so the samplers cannot fail
    let acc = match statistic {
        StatisticId::GammaDiff | StatisticId::GammaSum | StatisticId::TRatio => {
            sharded(stream, samples, |rng| {
                let x1 = sample_gamma(shape, rng).expect("validated shape");
                let x2 = sample_gamma(shape, rng).expect("validated shape");
                let s = match statistic {
                    StatisticId::GammaDiff => x1 - x2,
                    StatisticId::GammaSum => x1 + x2,
                    _ => (x1 - x2) / (x1 + x2),
                };
                s.powi(k)
            })
        }
        StatisticId::BetaDiff => sharded(stream, samples, |rng| {
            let y1 = sample_beta(0.5, 0.5, rng).expect("valid shape");
            let y2 = sample_beta(0.5, 0.5, rng).expect("valid shape");
            (y1 - y2).powi(k)
        }),
        StatisticId::Arcsine => sharded(stream, samples, |rng| sample_symmetric_arcsine(rng).powi(k)),
        StatisticId::Factorization => unreachable!("rejected by validate"),
    };

    let exact_target = rational_to_f64(&target);
    let std_error = acc.std_error();
    Ok(SampleStats {
        statistic_id: statistic,
        n,
        power,
        p,
        samples,
        mean: acc.mean,
        std_error,
        exact_target,
        z_score: z_score(acc.mean, exact_target, std_error),
    })
}

/// Estimate of `E[S^(2n)]` with standard error from the sample variance of
/// the powered values.
pub fn estimate_even_moment(
    statistic: StatisticId,
    n: u32,
    p: Option<&Rational>,
    samples: u64,
    stream: &RngStream,
) -> Result<SampleStats, MonteCarloError> {
    estimate(statistic, n, 2 * n, p, samples, stream)
}

/// Estimate of `E[S^(2n+1)]`, which is zero for the symmetric statistics.
pub fn estimate_odd_moment(
    statistic: StatisticId,
    n: u32,
    p: Option<&Rational>,
    samples: u64,
    stream: &RngStream,
) -> Result<SampleStats, MonteCarloError> {
    estimate(statistic, n, 2 * n + 1, p, samples, stream)
}

/// `E(X₁+X₂)^(2n) · E Y^(2n)` at p = ½ from two independent sub-streams,
/// compared with `E(X₁-X₂)^(2n) = (2n)!(½)_n/n!`. The standard error is the
/// delta-method one for a product of independent means.
pub fn factorization_check(
    n: u32,
    samples: u64,
    stream: &RngStream,
) -> Result<SampleStats, MonteCarloError> {
    validate(StatisticId::GammaDiff, n, samples)?;
    let half = frac(1, 2);
    let a = estimate(StatisticId::GammaSum, n, 2 * n, Some(&half), samples, &stream.substream(0))?;
    let b = estimate(StatisticId::Arcsine, n, 2 * n, None, samples, &stream.substream(1))?;
    let mean = a.mean * b.mean;
    let (va, vb) = (a.std_error * a.std_error, b.std_error * b.std_error);
    let std_error = (b.mean * b.mean * va + a.mean * a.mean * vb + va * vb).sqrt();
    let exact_target =
        rational_to_f64(&exact_moment_target(StatisticId::Factorization, 2 * n, None)?);
    Ok(SampleStats {
        statistic_id: StatisticId::Factorization,
        n,
        power: 2 * n,
        p: Some(half),
        samples,
        mean,
        std_error,
        exact_target,
        z_score: z_score(mean, exact_target, std_error),
    })
}

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::Rng;
use rand_distr::StandardNormal;

use super::MonteCarloError;

/// One draw from `Ga(p)` with unit scale.
///
/// Marsaglia–Tsang squeeze/rejection for `p ≥ 1`; for `p < 1` the boost
/// `Ga(p) = Ga(p + 1) · U^(1/p)`.
pub fn sample_gamma<R: Rng + ?Sized>(p: f64, rng: &mut R) -> Result<f64, MonteCarloError> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(MonteCarloError::InvalidShape(p));
    }
    if p < 1.0 {
        let boosted = marsaglia_tsang(p + 1.0, rng);
        let u: f64 = rng.sample(Open01);
        return Ok(boosted * u.powf(1.0 / p));
    }
    Ok(marsaglia_tsang(p, rng))
}

fn marsaglia_tsang<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let base = 1.0 + c * x;
        if base <= 0.0 {
            continue;
        }
        let v = base * base * base;
        let u: f64 = rng.sample(Open01);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// One draw from `Be(a, b)` as `X/(X + Y)` with independent gamma variables;
/// `Be(½, ½)` uses `sin²(πU/2)`.
pub fn sample_beta<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> Result<f64, MonteCarloError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(MonteCarloError::InvalidShape(a));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(MonteCarloError::InvalidShape(b));
    }
    if a == 0.5 && b == 0.5 {
        let u: f64 = rng.sample(Open01);
        let s = (0.5 * PI * u).sin();
        return Ok(s * s);
    }
    let x = sample_gamma(a, rng)?;
    let y = sample_gamma(b, rng)?;
    Ok(x / (x + y))
}

/// Arcsine law on `(-1, 1)`, density `1/(π√(1 - y²))`.
pub fn sample_symmetric_arcsine<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    (PI * u).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::RngStream;

    fn moments<F: FnMut() -> f64>(n: usize, mut draw: F) -> (f64, f64) {
        let xs: Vec<f64> = (0..n).map(|_| draw()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        (mean, var)
    }

    #[test]
    fn gamma_reproducible() {
        let s = RngStream::new(3, 9);
        let mut r1 = s.generator();
        let mut r2 = s.generator();
        for _ in 0..100 {
            assert_eq!(sample_gamma(2.5, &mut r1).unwrap(), sample_gamma(2.5, &mut r2).unwrap());
        }
    }

    #[test]
    fn gamma_rejects_bad_shape() {
        let mut r = RngStream::default().generator();
        assert!(sample_gamma(0.0, &mut r).is_err());
        assert!(sample_gamma(-1.0, &mut r).is_err());
        assert!(sample_gamma(f64::NAN, &mut r).is_err());
        assert!(sample_beta(0.5, 0.0, &mut r).is_err());
    }

    #[test]
    fn gamma_mean_at_two() {
        let n = 1_000_000;
        let mut r = RngStream::new(11, 0).generator();
        let (mean, var) = moments(n, || sample_gamma(2.0, &mut r).unwrap());
        let se = (var / n as f64).sqrt();
        assert!(((mean - 2.0) / se).abs() <= 5.0, "mean {mean}");
    }

    #[test]
    fn gamma_variance_at_half() {
        let n = 1_000_000;
        let mut r = RngStream::new(12, 0).generator();
        let xs: Vec<f64> = (0..n).map(|_| sample_gamma(0.5, &mut r).unwrap()).collect();
        // squared deviations from the known mean ½ estimate Var = ½
        let dev: Vec<f64> = xs.iter().map(|x| (x - 0.5).powi(2)).collect();
        let m = dev.iter().sum::<f64>() / n as f64;
        let v = dev.iter().map(|d| (d - m).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let se = (v / n as f64).sqrt();
        assert!(((m - 0.5) / se).abs() <= 5.0, "variance {m}");
        assert!(xs.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn arcsine_beta_moments() {
        let n = 1_000_000;
        let mut r = RngStream::new(13, 0).generator();
        let xs: Vec<f64> = (0..n).map(|_| sample_beta(0.5, 0.5, &mut r).unwrap()).collect();
        let (mean, var) = moments(n, {
            let mut it = xs.iter();
            move || *it.next().unwrap()
        });
        assert!(((mean - 0.5) / (var / n as f64).sqrt()).abs() <= 5.0);
        let (m2, v2) = moments(n, {
            let mut it = xs.iter();
            move || it.next().unwrap().powi(2)
        });
        assert!(((m2 - 0.375) / (v2 / n as f64).sqrt()).abs() <= 5.0, "second moment {m2}");
    }

    #[test]
    fn general_beta_mean() {
        let n = 200_000;
        let mut r = RngStream::new(14, 0).generator();
        let (mean, var) = moments(n, || sample_beta(2.0, 3.0, &mut r).unwrap());
        assert!(((mean - 0.4) / (var / n as f64).sqrt()).abs() <= 5.0);
    }

    #[test]
    fn symmetric_arcsine_second_moment() {
        let n = 1_000_000;
        let mut r = RngStream::new(15, 0).generator();
        let (m, v) = moments(n, || sample_symmetric_arcsine(&mut r).powi(2));
        assert!(((m - 0.5) / (v / n as f64).sqrt()).abs() <= 5.0);
    }
}

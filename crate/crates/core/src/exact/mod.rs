//! Exact arithmetic: big rationals, half-integers, π-graded values and the
//! gamma/Pochhammer/binomial primitives every identity is built from.

mod graded;
mod halfint;
pub mod rational;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use graded::{value_arith, ArithOp, PiGradedValue};
pub use halfint::HalfInteger;
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("gamma is only supported at positive half-integers, got {0}")]
    GammaPole(HalfInteger),
    #[error("shape parameter must be positive, got {0}")]
    NonPositiveShape(Rational),
    #[error("unsupported symbolic quotient: divisor has {0} terms, expected exactly one")]
    UnsupportedQuotient(usize),
    #[error("malformed rational {0:?}: expected \"a/b\" or an integer")]
    MalformedRational(String),
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    // acc * (n - i) is always divisible by i + 1 at this point
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n as i64)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Rising factorial `(a)_m = a(a+1)…(a+m-1)`.
pub fn pochhammer(a: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `Γ(n + ½)/Γ(½)` through the central binomial closed form
/// `C(2n, n)·n!/4ⁿ`.
pub fn gamma_ratio_half(n: u64) -> Rational {
    let num = central_binomial(n) * factorial(n);
    let den = BigInt::one() << (2 * n);
    Rational::new(num, den)
}

/// `Γ(a)` for positive half-integer `a`: `(a-1)!` for integers,
/// `(½)_{a-½} · π^(1/2)` otherwise.
pub fn gamma_value(a: HalfInteger) -> Result<PiGradedValue, ExactError> {
    if !a.is_positive() {
        return Err(ExactError::GammaPole(a));
    }
    let m = a.floor() as u64;
    if a.is_integer() {
        Ok(PiGradedValue::rational(Rational::from_integer(factorial(m - 1))))
    } else {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Ok(PiGradedValue::monomial(pochhammer(&half, m), 1))
    }
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta_value(a: HalfInteger, b: HalfInteger) -> Result<PiGradedValue, ExactError> {
    let num = &gamma_value(a)? * &gamma_value(b)?;
    num.checked_div(&gamma_value(a + b)?)
}

/// Coefficient of `t^(2n)` in `(1 - t²)^(-p)`, i.e. `(p)_n / n!`.
///
/// `(2n)!` times this is the `2n`-th moment of the difference of two
/// independent `Ga(p)` variables.
pub fn mgf_even_coefficient(p: &Rational, n: u64) -> Result<Rational, ExactError> {
    if !p.is_positive() {
        return Err(ExactError::NonPositiveShape(p.clone()));
    }
    Ok(pochhammer(p, n) / Rational::from_integer(factorial(n)))
}

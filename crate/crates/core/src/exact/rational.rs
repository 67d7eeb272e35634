//! Rational scalar helpers: parsing, canonical `num/den` formatting and
//! rigorous rational enclosures of π.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// π to 30 significant digits, used when rounding π-graded values to `f64`.
const PI_30: &str = "3.14159265358979323846264338328";
/// √π to 30 significant digits.
const SQRT_PI_30: &str = "1.77245385090551602729816748334";
/// π truncated after 64 decimals; the true value lies in `[PI_64, PI_64 + 1e-64)`.
const PI_64: &str = "3.1415926535897932384626433832795028841971693993751058209749445923";

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or a plain integer `"a"` (optional sign, surrounding
/// whitespace tolerated).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::MalformedRational(text.to_string());
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Canonical `num/den` rendering; integers keep the `/1` so every value has
/// the same shape in report files.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exact value of a terminating decimal literal.
fn decimal(text: &str) -> Rational {
    let (whole, digits) = text.split_once('.').unwrap_or((text, ""));
    let scale = num_traits::pow(BigInt::from(10), digits.len());
    let mantissa = BigInt::from_str(&format!("{whole}{digits}")).expect("decimal literal");
    Rational::new(mantissa, scale)
}

pub(crate) fn pi_30() -> Rational {
    decimal(PI_30)
}

pub(crate) fn sqrt_pi_30() -> Rational {
    decimal(SQRT_PI_30)
}

/// Rational bounds `lo < π < hi` with `hi - lo = 1e-64`.
pub fn pi_enclosure() -> (Rational, Rational) {
    let lo = decimal(PI_64);
    let hi = &lo + Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 64));
    (lo, hi)
}

/// Round-to-nearest conversion; saturates to ±∞ for magnitudes beyond `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(if q.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

//! Exact values of the form `Σ q_m · π^(m/2)` with rational `q_m`.
//!
//! `√π` is treated as transcendental over ℚ, so two values are equal exactly
//! when their coefficient maps agree. Every gamma and beta value at positive
//! half-integer arguments is a single term of this algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, pi_30, rational_to_f64, sqrt_pi_30};
use super::{ExactError, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiGradedValue {
    /// half-exponent `m` (meaning `π^(m/2)`) → nonzero coefficient
    terms: BTreeMap<i32, Rational>,
}

/// Ring operations accepted by [`value_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl PiGradedValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    /// `q · π^(half_exponent/2)`.
    pub fn monomial(q: Rational, half_exponent: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(half_exponent, q);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (m, q) in terms {
            v.accumulate(m, q);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(m, q)| (*m, q))
    }

    pub fn coefficient(&self, half_exponent: i32) -> Rational {
        self.terms.get(&half_exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of `π^0` if the value is purely rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// The single `(half_exponent, coefficient)` pair of a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, q)| (*m, q))
        } else {
            None
        }
    }

    fn accumulate(&mut self, m: i32, q: Rational) {
        if q.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(c) => {
                *c += q;
                c.is_zero()
            }
            None => {
                self.terms.insert(m, q);
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Division by a single-term value; anything else has no closed form in
    /// this algebra.
    pub fn checked_div(&self, rhs: &PiGradedValue) -> Result<PiGradedValue, ExactError> {
        let (m, q) = rhs
            .as_monomial()
            .ok_or(ExactError::UnsupportedQuotient(rhs.len()))?;
        let inv = q.recip();
        Ok(Self {
            terms: self.terms.iter().map(|(k, c)| (k - m, c * &inv)).collect(),
        })
    }

    /// Round-to-nearest `f64`, each term converted exactly with 30-digit
    /// constants for π and √π before a single final rounding.
    pub fn to_f64(&self) -> f64 {
        let pi = pi_30();
        let sqrt_pi = sqrt_pi_30();
        let mut total = Rational::zero();
        for (m, q) in &self.terms {
            let mut factor = num_traits::pow(pi.clone(), m.unsigned_abs() as usize / 2);
            if m % 2 != 0 {
                factor *= &sqrt_pi;
            }
            if *m < 0 {
                factor = factor.recip();
            }
            total += q * factor;
        }
        rational_to_f64(&total)
    }
}

impl From<Rational> for PiGradedValue {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl Add<&PiGradedValue> for &PiGradedValue {
    type Output = PiGradedValue;

    fn add(self, rhs: &PiGradedValue) -> PiGradedValue {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.accumulate(*m, q.clone());
        }
        out
    }
}

impl Add for PiGradedValue {
    type Output = PiGradedValue;

    fn add(self, rhs: PiGradedValue) -> PiGradedValue {
        &self + &rhs
    }
}

impl Neg for &PiGradedValue {
    type Output = PiGradedValue;

    fn neg(self) -> PiGradedValue {
        PiGradedValue {
            terms: self.terms.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }
}

impl Neg for PiGradedValue {
    type Output = PiGradedValue;

    fn neg(self) -> PiGradedValue {
        -&self
    }
}

impl Sub<&PiGradedValue> for &PiGradedValue {
    type Output = PiGradedValue;

    fn sub(self, rhs: &PiGradedValue) -> PiGradedValue {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.accumulate(*m, -q);
        }
        out
    }
}

impl Sub for PiGradedValue {
    type Output = PiGradedValue;

    fn sub(self, rhs: PiGradedValue) -> PiGradedValue {
        &self - &rhs
    }
}

impl Mul<&PiGradedValue> for &PiGradedValue {
    type Output = PiGradedValue;

    fn mul(self, rhs: &PiGradedValue) -> PiGradedValue {
        let mut out = PiGradedValue::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                out.accumulate(a + b, p * q);
            }
        }
        out
    }
}

impl Mul for PiGradedValue {
    type Output = PiGradedValue;

    fn mul(self, rhs: PiGradedValue) -> PiGradedValue {
        &self * &rhs
    }
}

impl std::iter::Sum for PiGradedValue {
    fn sum<I: Iterator<Item = PiGradedValue>>(iter: I) -> Self {
        iter.fold(PiGradedValue::zero(), |acc, v| acc + v)
    }
}

pub fn value_arith(
    x: &PiGradedValue,
    y: &PiGradedValue,
    op: ArithOp,
) -> Result<PiGradedValue, ExactError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl fmt::Display for PiGradedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q.clone()) };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            match *m {
                0 => write!(f, "{mag}")?,
                2 => write!(f, "{mag}·π")?,
                m if m % 2 == 0 => write!(f, "{mag}·π^{}", m / 2)?,
                m => write!(f, "{mag}·π^({m}/2)")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `[[half_exponent, "num/den"], ...]` in ascending grade.
impl Serialize for PiGradedValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, String)> = self
            .terms
            .iter()
            .map(|(m, q)| (*m, format_rational(q)))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiGradedValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i32, String)>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (m, s) in pairs {
            terms.push((m, parse_rational(&s).map_err(D::Error::custom)?));
        }
        Ok(PiGradedValue::from_terms(terms))
    }
}

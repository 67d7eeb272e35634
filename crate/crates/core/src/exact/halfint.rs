use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;

use super::Rational;

/// An exact multiple of ½, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn integer(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    /// `n + ½`.
    pub const fn half_odd(n: i64) -> Self {
        Self { twice: 2 * n + 1 }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_positive(self) -> bool {
        self.twice > 0
    }

    /// Integer part for nonnegative values (`⌊self⌋`).
    pub const fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;

    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

//! Exact fractions over `i128` with overflow detection.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A fraction in lowest terms with positive denominator.
///
/// The operator impls panic on overflow; the `checked_*` methods report it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_integer(v: i128) -> Self {
        Rational(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.0.checked_add(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.0.checked_sub(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.0.checked_mul(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.0.checked_div(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Rational::ONE, |acc, _| acc * *self)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(v: f64) -> Result<Self> {
        let r = BigRational::from_float(v).ok_or(Error::Overflow)?;
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) => Ok(Rational::new(n, d)),
            _ => Err(Error::Overflow),
        }
    }

    pub(crate) fn big_to_f64(v: &BigRational) -> f64 {
        v.to_f64().unwrap_or(f64::NAN)
    }
}

fn overflow() -> ! {
    panic!("{}", Error::Overflow)
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Self) -> Self {
        self.checked_add(&o).unwrap_or_else(|_| overflow())
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(&o).unwrap_or_else(|_| overflow())
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(&o).unwrap_or_else(|_| overflow())
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, o: Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        self.checked_div(&o).unwrap_or_else(|_| overflow())
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl From<i128> for Rational {
    fn from(v: i128) -> Self {
        Rational::from_integer(v)
    }
}

/// Prints `a/b`, or just `a` for integers.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, message: format!("bad fraction {s:?}") };
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim().parse::<i128>().map_err(|_| bad())?, d.trim().parse::<i128>().map_err(|_| bad())?),
            None => (s.trim().parse::<i128>().map_err(|_| bad())?, 1),
        };
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

/// Binomial coefficient.
pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Orders two big rationals; convenience for sign tests.
pub(crate) fn big_sign(v: &BigRational) -> Ordering {
    v.cmp(&BigRational::zero())
}

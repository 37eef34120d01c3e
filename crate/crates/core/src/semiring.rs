//! Weight semirings for the Kleisli matrices.
//!
//! Two instances are provided: [`Rational`] (nonnegative rationals, the
//! weights of finitely supported subdistributions) and [`Natural`]
//! (multiplicities of finitary multisets). Equality is exact in both.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative semiring with decidable equality.
pub trait Semiring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Sum of an iterator of weights.
    fn sum<'a, I>(iter: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        iter.into_iter().fold(Self::zero(), |acc, w| acc.add(w))
    }
}

/// Error returned when a weight literal is malformed or out of range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("malformed weight literal `{0}`")]
    Malformed(String),
    #[error("decimal literal `{0}` rejected; write weights as exact fractions")]
    Decimal(String),
    #[error("negative weight `{0}`")]
    Negative(String),
    #[error("weight `{0}` is not a natural number")]
    NotNatural(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Exact nonnegative rational.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`; panics on a zero denominator or a negative value.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Wraps a big rational; returns `None` when it is negative.
    pub fn from_big(value: BigRational) -> Option<Self> {
        if value.is_negative() {
            None
        } else {
            Some(Rational(value))
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// `1 - self`, or `None` when `self > 1`.
    pub fn one_minus(&self) -> Option<Self> {
        Self::from_big(BigRational::one() - &self.0)
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        Self::from_big(&self.0 - &other.0)
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.0.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }

    /// True for values in the open interval (0, 1).
    pub fn is_proper_probability(&self) -> bool {
        self.0.is_positive() && self.0 < BigRational::one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Semiring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(text: &str, whole: &str) -> Result<BigUint, WeightError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WeightError::Malformed(whole.to_string()));
    }
    BigUint::from_str(text).map_err(|_| WeightError::Malformed(whole.to_string()))
}

impl FromStr for Rational {
    type Err = WeightError;

    /// Accepts `n` or `n/d` with decimal digits only.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('.') {
            return Err(WeightError::Decimal(s.to_string()));
        }
        if s.starts_with('-') {
            return Err(WeightError::Negative(s.to_string()));
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_digits(n.trim(), s)?, parse_digits(d.trim(), s)?),
            None => (parse_digits(s, s)?, BigUint::one()),
        };
        if den.is_zero() {
            return Err(WeightError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        )))
    }
}

/// Exact natural number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn new(n: u64) -> Self {
        Natural(BigUint::from(n))
    }

    pub fn as_big(&self) -> &BigUint {
        &self.0
    }
}

impl Semiring for Natural {
    fn zero() -> Self {
        Natural(BigUint::zero())
    }
    fn one() -> Self {
        Natural(BigUint::one())
    }
    fn add(&self, other: &Self) -> Self {
        Natural(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Natural(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Natural {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: Rational = s.parse()?;
        if !r.is_integer() {
            return Err(WeightError::NotNatural(s.trim().to_string()));
        }
        Ok(Natural(r.numer().magnitude().clone()))
    }
}

impl From<&Natural> for Rational {
    fn from(n: &Natural) -> Self {
        Rational(BigRational::from_integer(BigInt::from_biguint(
            Sign::Plus,
            n.0.clone(),
        )))
    }
}

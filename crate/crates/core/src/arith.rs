//! Exact integer and rational primitives.
//!
//! Nothing in this crate touches floating point. Integers are [`num_bigint::BigInt`];
//! rationals are kept reduced with a positive denominator so that structural
//! equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

/// Floor square root with an exactness flag.
///
/// Integer Newton iteration started above the root, stopped as soon as the
/// iterate stops decreasing. Values that fit in 128 bits take a machine-word
/// path with the same iteration.
pub fn isqrt(n: &Integer) -> Result<(Integer, bool)> {
    if n.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative value {n}")));
    }
    if let Some(small) = n.to_u128() {
        let root = isqrt_u128(small);
        return Ok((Integer::from(root), root * root == small));
    }
    let root = newton_isqrt(n);
    let exact = &root * &root == *n;
    Ok((root, exact))
}

fn newton_isqrt(n: &Integer) -> Integer {
    // 2^ceil(bits/2) > sqrt(n)
    let mut x = Integer::one() << ((n.bits() + 1) / 2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// The exact square root of `n`, or [`Error::NotASquare`] naming `what`.
pub fn exact_sqrt(n: &Integer, what: &'static str) -> Result<Integer> {
    if n.is_negative() {
        return Err(Error::not_square(what, n));
    }
    match isqrt(n)? {
        (root, true) => Ok(root),
        _ => Err(Error::not_square(what, n)),
    }
}

pub fn is_square(n: &Integer) -> bool {
    !n.is_negative() && matches!(isqrt(n), Ok((_, true)))
}

/// Parse the decimal wire form: optional `-`, no `+`, no leading zeros, no `-0`.
pub fn parse_integer(s: &str) -> Result<Integer> {
    let bad = |reason| Error::Parse {
        input: s.to_string(),
        reason,
    };
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() {
        return Err(bad("empty"));
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("non-digit character"));
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return Err(bad("leading zero"));
    }
    if digits == "0" && digits.len() != s.len() {
        return Err(bad("negative zero"));
    }
    Integer::from_str(s).map_err(|_| bad("not an integer"))
}

/// Exact rational, always reduced with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Build the canonical reduced fraction `num/den`.
pub fn rational_reduce(num: Integer, den: Integer) -> Result<Rational> {
    Rational::new(num, den)
}

/// Exact square root of a nonnegative rational.
pub fn rational_sqrt(q: &Rational) -> Result<Rational> {
    q.sqrt()
}

impl Rational {
    pub fn new(num: Integer, den: Integer) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {num}/0")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn square(&self) -> Rational {
        self * self
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::Domain(format!("division of {self} by zero")));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Succeeds iff the reduced numerator and denominator are both squares.
    pub fn sqrt(&self) -> Result<Rational> {
        let num = exact_sqrt(self.numer(), "numerator").map_err(|_| self.not_square())?;
        let den = exact_sqrt(self.denom(), "denominator").map_err(|_| self.not_square())?;
        // both halves of a reduced fraction stay coprime
        Ok(Rational(BigRational::new_raw(num, den)))
    }

    fn not_square(&self) -> Error {
        Error::not_square("rational", self)
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, including integers (`5/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s.split_once('/').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            reason: "expected num/den",
        })?;
        let num = parse_integer(num)?;
        let den = parse_integer(den)?;
        if den.sign() != Sign::Plus {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "denominator must be positive",
            });
        }
        Rational::new(num, den)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

//! Exact integers and normalized rationals.
//!
//! [`Integer`] is an arbitrary-precision signed integer. [`Rational`] wraps a
//! fraction that is reduced on every construction, so two rationals are equal
//! exactly when their numerators and denominators are equal.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot invert zero")]
    InvertZero,
    #[error("invalid number literal {0:?}")]
    Parse(String),
}

/// `n!`.
pub fn factorial(n: u32) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> Integer {
    if k < 0 || k > n as i64 {
        return Integer::zero();
    }
    let k = (k as u32).min(n - k as u32);
    // Each partial product is C(n - k + i, i), so the division is exact.
    (1..=k).fold(Integer::one(), |acc, i| acc * (n - k + i) / i)
}

/// `(-1)^k` as a small integer.
pub fn sign_pow(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An exact fraction with positive denominator in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `p/q` in canonical form.
    pub fn new(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<Self, ArithError> {
        let q = q.into();
        if q.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(p.into(), q)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(BigRational::from_integer(n.into()))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<Integer> {
        self.is_integer().then(|| self.numer().clone())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::InvertZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like integer division; use [`Rational::recip`]
/// for a fallible inverse.
impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
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

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `p` or `p/q` with optional leading minus signs.
impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let trimmed = s.trim();
        let (p, q) = match trimmed.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (trimmed, "1"),
        };
        let p = Integer::from_str(p).map_err(|_| bad())?;
        let q = Integer::from_str(q).map_err(|_| bad())?;
        Rational::new(p, q)
    }
}

/// Least nonnegative residue of `n` modulo `m` (`m > 0`).
pub fn mod_floor(n: &Integer, m: u32) -> Integer {
    n.mod_floor(&Integer::from(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(7, 0), Integer::from(1));
        assert_eq!(binomial(3, 5), Integer::zero());
        assert_eq!(binomial(3, -1), Integer::zero());
        assert_eq!(binomial(0, 0), Integer::one());
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=30u32 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Integer::one());
        assert_eq!(factorial(5), Integer::from(120));
        let mut oracle: u64 = 1;
        for k in 1..=20u64 {
            oracle *= k;
        }
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20), Integer::from(oracle));
    }

    #[test]
    fn rational_normalization() {
        let half = q(2, 4);
        assert_eq!(
            (half.numer().clone(), half.denom().clone()),
            (1.into(), 2.into())
        );
        let neg = q(1, -2);
        assert_eq!(neg.numer(), &Integer::from(-1));
        assert_eq!(neg.denom(), &Integer::from(2));
        let zero = q(0, 7);
        assert_eq!(zero.denom(), &Integer::one());
        assert_eq!(zero, Rational::zero());
        assert_eq!(Rational::new(1, 0), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!("-3/6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn recip_of_zero_fails() {
        assert_eq!(Rational::zero().recip(), Err(ArithError::InvertZero));
        assert_eq!(q(-2, 3).recip().unwrap(), q(-3, 2));
    }

    #[test]
    fn residues() {
        assert_eq!(mod_floor(&Integer::from(-2), 4), Integer::from(2));
        assert_eq!(mod_floor(&Integer::from(16), 4), Integer::zero());
    }

    #[test]
    fn big_integer_round_trip() {
        let big = factorial(450);
        let text = big.to_string();
        assert!(text.len() > 1000);
        assert_eq!(text.parse::<Integer>().unwrap(), big);
        let neg = -big;
        assert_eq!(neg.to_string().parse::<Integer>().unwrap(), neg);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(p, d)| q(p, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.denom() > &Integer::zero());
            let sum = &a + &c;
            prop_assert_eq!(num_integer::gcd(sum.numer().clone(), sum.denom().clone()), Integer::one());
        }

        #[test]
        fn decimal_round_trip(digits in "-?[1-9][0-9]{0,999}") {
            let n: Integer = digits.parse().unwrap();
            prop_assert_eq!(n.to_string(), digits);
        }
    }
}

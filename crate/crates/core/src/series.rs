//! Truncated power series with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores the ordinary coefficients of
//! `x^0, ..., x^N`. Binary operations truncate to the smaller order. The
//! exponential-generating-function view `n! * [x^n]` is computed on demand by
//! [`Series::egf_coeff`].

use std::fmt;

use thiserror::Error;

use crate::arith::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has zero constant term and no power-series inverse")]
    NotInvertible,
    #[error("index {index} is beyond truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },
    #[error(
        "phi(x, t) is degenerate at t = 1: the denominator t - e^(x(t-1)) vanishes identically"
    )]
    DegenerateParameter,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series from ordinary coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        Series { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::constant(Rational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    /// The series `x` truncated at `order` (zero when `order == 0`).
    pub fn x(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> Result<&Rational, SeriesError> {
        self.coeffs.get(k).ok_or(SeriesError::IndexBeyondOrder {
            index: k,
            order: self.order(),
        })
    }

    /// `k! * [x^k]`.
    pub fn egf_coeff(&self, k: usize) -> Result<Rational, SeriesError> {
        let c = self.coeff(k)?;
        Ok(c * &Rational::from(factorial(k as u32)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_coeffs(
            (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_coeffs(
            (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .filter(|&j| !self.coeffs[j].is_zero() && !other.coeffs[k - j].is_zero())
                    .map(|j| &self.coeffs[j] * &other.coeffs[k - j])
                    .sum()
            })
            .collect();
        Series::from_coeffs(coeffs)
    }

    /// Multiplicative inverse via `b_0 = 1/a_0`,
    /// `b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}`.
    pub fn reciprocal(&self) -> Result<Series, SeriesError> {
        let inv_a0 = self.coeffs[0]
            .recip()
            .map_err(|_| SeriesError::NotInvertible)?;
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv_a0.clone());
        for k in 1..=self.order() {
            let acc: Rational = (1..=k)
                .filter(|&j| !self.coeffs[j].is_zero())
                .map(|j| &self.coeffs[j] * &out[k - j])
                .sum();
            out.push(-(acc * &inv_a0));
        }
        Ok(Series::from_coeffs(out))
    }

    /// `x * self`, truncated to the same order.
    pub fn shift_up(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series::from_coeffs(coeffs)
    }
}

/// Truncation of `e^(a x)`.
pub fn exp_linear(a: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for k in 1..=order {
        term = term * a / Rational::from(k as i64);
        coeffs.push(term.clone());
    }
    Series::from_coeffs(coeffs)
}

/// The excedance generating function `(t-1) / (t - e^(x(t-1)))`.
pub fn phi_series(t: &Rational, order: usize) -> Result<Series, SeriesError> {
    let t_minus_one = t - &Rational::one();
    if t_minus_one.is_zero() {
        return Err(SeriesError::DegenerateParameter);
    }
    let denominator = Series::constant(t.clone(), order).sub(&exp_linear(&t_minus_one, order));
    Ok(denominator.reciprocal()?.scale(&t_minus_one))
}

/// `tanh x = (e^x - e^-x) / (e^x + e^-x)`.
pub fn tanh_series(order: usize) -> Series {
    let pos = exp_linear(&Rational::one(), order);
    let neg = exp_linear(&Rational::from(-1), order);
    let denominator = pos
        .add(&neg)
        .reciprocal()
        .expect("e^x + e^-x has constant term 2");
    pos.sub(&neg).mul(&denominator)
}

/// Genocchi generating function `2x / (e^x + 1)`.
pub fn genocchi_series(order: usize) -> Series {
    let denominator = exp_linear(&Rational::one(), order)
        .add(&Series::one(order))
        .reciprocal()
        .expect("e^x + 1 has constant term 2");
    denominator.shift_up().scale(&Rational::from(2))
}

/// Bernoulli generating function `x / (e^x - 1)`, formed as the reciprocal
/// of `(e^x - 1)/x = sum x^k / (k+1)!`.
pub fn bernoulli_series(order: usize) -> Series {
    let quotient = Series::from_coeffs(
        (0..=order)
            .map(|k| Rational::new(1, factorial(k as u32 + 1)).expect("factorial is nonzero"))
            .collect(),
    );
    quotient
        .reciprocal()
        .expect("(e^x - 1)/x has constant term 1")
}

/// Renders `c0 + c1*x + c2*x^2 + ...` with every coefficient shown.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]({self})", self.order())
    }
}

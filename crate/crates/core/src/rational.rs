//! Exact rational scalars.
//!
//! Every scalar in the crate is a [`Rational`], an arbitrary-precision
//! fraction kept in reduced form with a positive denominator. The wire format
//! is the string `"p/q"` (or `"p"` for integers).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r: Rational = t
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering for human consumption. Never authoritative.
pub fn approx(r: &Rational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse(s)).collect()
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

/// Weighted ℓ¹ norm `Σ w_i |x_i|`.
pub fn weighted_l1(x: &[Rational], w: &[Rational]) -> Rational {
    x.iter()
        .zip(w)
        .filter(|(a, _)| !a.is_zero())
        .fold(zero(), |acc, (a, wi)| acc + a.abs() * wi)
}

/// Weighted ℓ∞ norm `max u_i |x_i|`.
pub fn weighted_linf(x: &[Rational], u: &[Rational]) -> Rational {
    x.iter()
        .zip(u)
        .map(|(a, ui)| a.abs() * ui)
        .max()
        .unwrap_or_else(zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

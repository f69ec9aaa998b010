//! Exact Gaussian-rational scalars.
//!
//! Every identity checked by this crate is an equality of finite sums of
//! products of weights and vector entries, so a field with decidable equality
//! is enough. [`ScalarQ`] is `a + b·i` with `a, b` arbitrary-precision
//! rationals.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Parses `"p/q"` or `"p"` into a rational, requiring `q > 0`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(Error::Parse(format!(
            "rational {s:?} needs a positive denominator"
        )));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A Gaussian-rational complex number.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarQ(Complex<BigRational>);

impl ScalarQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ScalarQ(Complex::new(re, im))
    }

    pub fn from_rational(re: BigRational) -> Self {
        ScalarQ(Complex::new(re, BigRational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        ScalarQ(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.re.is_one() && self.0.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ScalarQ(self.0.conj())
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        self.0.norm_sqr()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ScalarQ::new(&self.0.re / &n, -&self.0.im / &n))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ScalarQ::new(&self.0.re * r, &self.0.im * r)
    }

    /// Approximate value, for reporting only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.0.re), rational_to_f64(&self.0.im))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl From<BigRational> for ScalarQ {
    fn from(r: BigRational) -> Self {
        ScalarQ::from_rational(r)
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b ScalarQ> for &'a ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &'b ScalarQ) -> ScalarQ {
                ScalarQ($trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $trait<ScalarQ> for &'a ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                ScalarQ($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                ScalarQ($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &'a ScalarQ) -> ScalarQ {
                ScalarQ($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ(-self.0)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ(-self.0.clone())
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl AddAssign for ScalarQ {
    fn add_assign(&mut self, rhs: ScalarQ) {
        self.0 = &self.0 + rhs.0;
    }
}

impl Sum for ScalarQ {
    fn sum<I: Iterator<Item = ScalarQ>>(iter: I) -> Self {
        iter.fold(ScalarQ::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ScalarQ> for ScalarQ {
    fn sum<I: Iterator<Item = &'a ScalarQ>>(iter: I) -> Self {
        iter.fold(ScalarQ::zero(), |acc, x| acc + x)
    }
}

/// `re`, `re+im·i` or `re-im·i`, with each part written `p/q`.
impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = format_rational(&self.0.re);
        if self.0.im.is_zero() {
            return f.write_str(&re);
        }
        let sign = if self.0.im.is_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{}·i", format_rational(&self.0.im.abs()))
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ScalarQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("·i").or_else(|| s.strip_suffix('i')) else {
            return Ok(ScalarQ::from_rational(parse_rational(s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "+" | "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(ScalarQ::new(parse_rational(re)?, im))
    }
}

impl serde::Serialize for ScalarQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ScalarQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for rationals written as `"p/q"` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

//! Exact rational scalars.
//!
//! Every quantity in the pipeline (vertex values, distances, translations and
//! scale factors) is an arbitrary precision rational, so all comparisons of
//! the form `|a - b| <= delta` are decided exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact binary value of a finite float.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Scalar)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
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

    pub fn half(&self) -> Self {
        Scalar(&self.0 / BigInt::from(2))
    }

    pub fn midpoint(&self, other: &Scalar) -> Self {
        (self + other).half()
    }

    /// `|self - other|`.
    pub fn dist(&self, other: &Scalar) -> Self {
        Scalar((&self.0 - &other.0).abs())
    }

    /// `|self - other| <= delta`.
    pub fn within(&self, other: &Scalar, delta: &Scalar) -> bool {
        (&self.0 - &other.0).abs() <= delta.0
    }

    pub fn min_of<'a>(&'a self, other: &'a Scalar) -> &'a Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Scalar) -> &'a Scalar {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical reduced form: `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts integers, decimals with optional exponent (`-1.25e-3`) and
    /// fractions (`3/4`). Decimal input is converted without rounding.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: Scalar = n.parse().map_err(|_| bad())?;
            let d: Scalar = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(&n / &d);
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(pos) => {
                let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
                (&s[..pos], e)
            }
            None => (s, 0),
        };
        let (neg, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all: String = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
        let scale = exp - frac_part.len() as i64;
        if scale.unsigned_abs() > 4096 {
            return Err(bad());
        }
        let ten = BigInt::from(10);
        let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
        let mut r = if scale >= 0 {
            BigRational::from_integer(numer * pow)
        } else {
            BigRational::new(numer, pow)
        };
        if neg {
            r = -r;
        }
        Ok(Scalar(r))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The interval grown by `delta` on both sides.
    pub fn inflate(&self, delta: &Scalar) -> Interval {
        Interval { lo: &self.lo - delta, hi: &self.hi + delta }
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("1.5".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("-0.25".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 4));
        assert_eq!("1e-3".parse::<Scalar>().unwrap(), Scalar::ratio(1, 1000));
        assert_eq!("2.5E2".parse::<Scalar>().unwrap(), Scalar::from_int(250));
        assert_eq!("3/6".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!(".5".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!("7.".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert_eq!("0.1".parse::<Scalar>().unwrap(), Scalar::ratio(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "1.2.3", "--1", "1/0", "e5", "1e", "."] {
            assert!(s.parse::<Scalar>().is_err(), "{s}");
        }
    }

    #[test]
    fn renders_reduced() {
        assert_eq!(Scalar::ratio(2, 4).to_string(), "1/2");
        assert_eq!(Scalar::ratio(-6, 5).to_string(), "-6/5");
        assert_eq!(Scalar::from_int(2).to_string(), "2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn within_is_closed() {
        let a = Scalar::from_int(0);
        let b = Scalar::from_int(2);
        assert!(a.within(&b, &Scalar::from_int(2)));
        assert!(!a.within(&b, &Scalar::ratio(199, 100)));
    }
}

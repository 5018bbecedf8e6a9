//! Exact Gaussian rationals `a + bi` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational: {s:?}"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Serde adapter storing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(pub Complex<Rational>);

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn real(re: Rational) -> Self {
        Scalar::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(rat_int(n))
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn re(&self) -> &Rational {
        &self.0.re
    }

    pub fn im(&self) -> &Rational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        self.0.norm_sqr()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.0.re / &n, -&self.0.im / &n))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::real(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl fmt::Display for Scalar {
    /// Always parenthesised: `(1/2)`, `(-i)`, `(1/2+3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        let imag = |q: &Rational, leading: bool| -> String {
            let sign = if q.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            let mag = q.abs();
            if mag.is_one() {
                format!("{sign}i")
            } else {
                format!("{sign}{}i", format_rational(&mag))
            }
        };
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "({})", format_rational(re)),
            (true, false) => write!(f, "({})", imag(im, true)),
            (false, false) => write!(f, "({}{})", format_rational(re), imag(im, false)),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts the `Display` form with or without the outer parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return parse_err(0, "empty scalar");
        }
        // split at the last sign that is not leading
        let bytes = t.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        let parse_imag = |p: &str| -> Result<Rational> {
            let body = p.trim().strip_suffix('i').ok_or(Error::Parse {
                pos: 0,
                msg: format!("expected imaginary part in {t:?}"),
            })?;
            match body.trim() {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                b => parse_rational(b),
            }
        };
        match split {
            Some(i) if t.ends_with('i') => {
                let re = parse_rational(&t[..i])?;
                let im = parse_imag(&t[i..])?;
                Ok(Scalar::new(re, im))
            }
            _ if t.ends_with('i') => Ok(Scalar::new(Rational::zero(), parse_imag(t)?)),
            _ => Ok(Scalar::real(parse_rational(t)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::new(rat(1, 2), rat_int(3)).to_string(), "(1/2+3i)");
        assert_eq!(Scalar::new(rat(1, 2), rat_int(-1)).to_string(), "(1/2-i)");
        assert_eq!((-Scalar::i()).to_string(), "(-i)");
        assert_eq!(Scalar::from_int(-1).to_string(), "(-1)");
        assert_eq!(Scalar::zero().to_string(), "(0)");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["(1/2+3i)", "(1/2-i)", "(-i)", "(i)", "(-1)", "(0)", "(-3/4+2/5i)", "(7/3i)"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("(1/0)".parse::<Scalar>().is_err());
        assert!("(abc)".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_ops() {
        let z = Scalar::new(rat(1, 2), rat_int(3));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(&z * &z.conj(), Scalar::real(z.norm_sqr()));
    }
}

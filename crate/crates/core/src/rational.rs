//! Exact rational and Gaussian-rational scalars.
//!
//! Rationals are serialized as `"p/q"` (or `"p"` when the denominator is 1),
//! complex rationals as `"re+imi"` / `"re-imi"`, e.g. `"-1/2+3/4i"`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a [`Rational`] as its `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Exact complex number `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(q(n))
    }

    pub fn i() -> Self {
        ComplexRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `true` iff the value lies on the closed non-negative real half-line.
    pub fn is_nonnegative_real(&self) -> bool {
        self.im.is_zero() && !self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        ComplexRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexRational { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(ComplexRational { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        ComplexRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for ComplexRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn add(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn sub(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, o: &ComplexRational) -> ComplexRational {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => return ComplexRational::real(&self.re * &o.re),
            (true, false) => return o.scale(&self.re),
            (false, true) => return self.scale(&o.re),
            _ => {}
        }
        ComplexRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn div(self, o: &ComplexRational) -> ComplexRational {
        if o.im.is_zero() {
            return ComplexRational { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let inv = o.inv().expect("division by zero complex rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, o: ComplexRational) -> ComplexRational {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, o: &ComplexRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, o: &ComplexRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let re = if self.re.is_zero() { String::new() } else { format_rational(&self.re) };
        let sign = if self.re.is_zero() && sign == '+' { String::new() } else { sign.to_string() };
        let im = self.im.abs();
        let coeff = if im.is_one() { String::new() } else { format_rational(&im) };
        write!(f, "{re}{sign}{coeff}i")
    }
}

impl FromStr for ComplexRational {
    type Err = Error;

    /// Accepts `a/b`, `a/b+c/di`, `a/b - c/d i`, `c/di`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty complex number".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(ComplexRational::real(parse_rational(&t)?));
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .rev()
            .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx);
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(ComplexRational { re: parse_rational(re_part)?, im })
    }
}

impl Serialize for ComplexRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ComplexRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_forms() {
        let c: ComplexRational = "-1+i".parse().unwrap();
        assert_eq!(c, ComplexRational::new(q(-1), q(1)));
        let c: ComplexRational = "-1/2 - 3/4 i".parse().unwrap();
        assert_eq!(c, ComplexRational::new(qf(-1, 2), qf(-3, 4)));
        let c: ComplexRational = "i".parse().unwrap();
        assert_eq!(c, ComplexRational::i());
        let c: ComplexRational = "-2i".parse().unwrap();
        assert_eq!(c, ComplexRational::new(q(0), q(-2)));
        let c: ComplexRational = "-7/3".parse().unwrap();
        assert_eq!(c, ComplexRational::real(qf(-7, 3)));
        assert!("1/0".parse::<ComplexRational>().is_err());
        assert!("abc".parse::<ComplexRational>().is_err());
    }

    #[test]
    fn division() {
        let four = ComplexRational::from_int(4);
        let two_i = ComplexRational::new(q(0), q(2));
        assert_eq!(&four / &two_i, ComplexRational::new(q(0), q(-2)));
        assert!(ComplexRational::zero().inv().is_none());
    }

    #[test]
    fn nonnegative_real_gate() {
        assert!(ComplexRational::from_int(0).is_nonnegative_real());
        assert!(ComplexRational::from_int(3).is_nonnegative_real());
        assert!(!ComplexRational::from_int(-1).is_nonnegative_real());
        assert!(!ComplexRational::i().is_nonnegative_real());
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let z = ComplexRational::new(qf(a, b), qf(c, d));
            let back: ComplexRational = z.to_string().parse().unwrap();
            prop_assert_eq!(back, z);
        }
    }
}

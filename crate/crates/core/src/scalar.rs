//! Exact arithmetic in the Gaussian rationals Q(i).
//!
//! Values are kept canonical after every operation (reduced fractions with
//! positive denominators), so structural equality is field equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::real(Rational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 as a rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = exp as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).scalar()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.im.abs(), f)?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Accept both "3/2" strings and bare JSON integers.
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => Scalar::parse(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
            other => Err(serde::de::Error::custom(format!("expected scalar, got {other}"))),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.trim().chars().collect(), pos: 0, _src: src }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn scalar(&mut self) -> Result<Scalar> {
        if self.chars.is_empty() {
            return self.err("empty input");
        }
        let neg = self.sign() == Some(true);
        let mut re = self.unsigned_rational()?;
        if neg {
            re = -re;
        }
        if self.pos == self.chars.len() {
            return Ok(Scalar::real(re));
        }
        let Some(neg_im) = self.sign() else {
            return self.err("expected '+' or '-' before imaginary part");
        };
        let mut im = self.unsigned_rational()?;
        if neg_im {
            im = -im;
        }
        if self.peek() != Some('i') {
            return self.err("expected 'i'");
        }
        self.pos += 1;
        if self.pos != self.chars.len() {
            return self.err("trailing input");
        }
        Ok(Scalar::new(re, im))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Scalar::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| {
    // most values are real; skip the cross terms then
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => Scalar::new(&a.re * &b.re, Rational::zero()),
        (true, false) => Scalar::new(&a.re * &b.re, &a.re * &b.im),
        (false, true) => Scalar::new(&a.re * &b.re, &a.im * &b.re),
        (false, false) => Scalar::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re),
    }
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn parses_grammar() {
        assert_eq!(s("3/2"), Scalar::from_ratio(3, 2).unwrap());
        assert_eq!(s("-2"), Scalar::from_int(-2));
        assert_eq!(s("\u{2212}2"), Scalar::from_int(-2));
        assert_eq!(s("1/2+3/4i"), Scalar::new(Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())));
        assert_eq!(s("0-1i"), -Scalar::i());
        assert_eq!(s("4/6"), Scalar::from_ratio(2, 3).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Scalar::parse("5/0"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Scalar::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("1+2"), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("1/-2"), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("abc"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Scalar::parse("1+2ix"), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        for t in ["0", "-7", "3/2", "1/2+3/4i", "-1/3-2i", "0+1i"] {
            assert_eq!(s(t).to_string(), t);
        }
    }

    #[test]
    fn division() {
        let z = s("1+1i");
        assert_eq!(z.inv().unwrap(), s("1/2-1/2i"));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(s("3").checked_div(&s("6")).unwrap(), s("1/2"));
        assert_eq!(s("2").pow(-2).unwrap(), s("1/4"));
        assert_eq!(Scalar::i().pow(2).unwrap(), s("-1"));
    }

    #[test]
    fn serde_as_string() {
        let v: Vec<Scalar> = serde_json::from_str(r#"["1/2", 3, "0-1i"]"#).unwrap();
        assert_eq!(v, vec![s("1/2"), s("3"), s("0-1i")]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","0-1i"]"#);
    }
}

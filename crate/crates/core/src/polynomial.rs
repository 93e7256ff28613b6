//! Polynomials over Q(i): multivariate (for the isomorphism solver) and
//! univariate rational functions (for reconstructing family parameters).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimal field interface used by expression evaluation.
pub trait Field: Clone {
    fn from_scalar(s: &Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;

    fn powi(&self, e: i32) -> Result<Self> {
        let mut acc = Self::from_scalar(&Scalar::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            Self::from_scalar(&Scalar::one()).div(&acc)
        } else {
            Ok(acc)
        }
    }
}

impl Field for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn powi(&self, e: i32) -> Result<Self> {
        self.pow(e)
    }
}

/// Sparse multivariate polynomial; monomials are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Replaces every variable with a known value.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e2 = e.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    if let Some(v) = &values[i] {
                        c = &c * &v.pow(k as i32).expect("nonnegative power");
                        e2[i] = 0;
                    }
                }
            }
            r.add_term(e2, c);
        }
        r
    }

    /// Coefficients and constant term of a polynomial of degree at most one.
    pub fn linear_parts(&self) -> Option<(Vec<Scalar>, Scalar)> {
        if self.degree() > 1 {
            return None;
        }
        let mut coeffs = vec![Scalar::zero(); self.nvars];
        let mut constant = Scalar::zero();
        for (e, c) in &self.terms {
            match e.iter().position(|&x| x == 1) {
                Some(i) => coeffs[i] = c.clone(),
                None => constant = c.clone(),
            }
        }
        Some((coeffs, constant))
    }
}

/// Univariate polynomial, coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly1(Vec<Scalar>);

impl Poly1 {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly1(c)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly1::new(vec![c])
    }

    pub fn x() -> Self {
        Poly1::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let n = self.0.len().max(o.0.len());
        let z = Scalar::zero();
        Poly1::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly1) -> Poly1 {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Poly1 {
        Poly1::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1(Vec::new());
        }
        let mut r = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += &(a * b);
            }
        }
        Poly1::new(r)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dl = d.lead().inv().expect("nonzero lead");
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (Poly1(Vec::new()), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] -= &(&c * dc);
            }
            q[i] = c;
        }
        (Poly1::new(q), Poly1::new(r))
    }

    pub fn monic(&self) -> Poly1 {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv().expect("nonzero lead"))
    }

    pub fn gcd(&self, o: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Reduced rational function num/den with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly1,
    den: Poly1,
}

impl RatFn {
    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly1::constant(Scalar::one()) });
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let l = den.lead().inv().expect("nonzero lead");
        Ok(RatFn { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn x() -> Self {
        RatFn { num: Poly1::x(), den: Poly1::constant(Scalar::one()) }
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Scalar::zero()),
            (Some(0), Some(0)) => Some(self.num.0[0].clone()),
            _ => None,
        }
    }
}

impl Field for RatFn {
    fn from_scalar(s: &Scalar) -> Self {
        RatFn { num: Poly1::constant(s.clone()), den: Poly1::constant(Scalar::one()) }
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly1 {
        Poly1::new(c.iter().map(|&x| x.into()).collect())
    }

    #[test]
    fn gcd_and_reduction() {
        // (x-1)(x+2) / (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let r = RatFn::new(a, b).unwrap();
        assert_eq!(r.num(), &p(&[2, 1]));
        assert_eq!(r.den(), &p(&[-3, 1]));
    }

    #[test]
    fn ratfn_cancels_to_linear() {
        let x = RatFn::x();
        let x5 = x.powi(5).unwrap();
        let x4 = x.powi(4).unwrap();
        let r = x5.div(&x4).unwrap();
        assert_eq!(r, x);
        assert_eq!(r.sub(&x).as_constant(), Some(Scalar::zero()));
    }

    #[test]
    fn mpoly_linear_parts() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = x.scale(&3.into()).add(&MPoly::constant(2, 5.into())).sub(&y);
        let (c, k) = f.linear_parts().unwrap();
        assert_eq!(c, vec![Scalar::from(3), Scalar::from(-1)]);
        assert_eq!(k, Scalar::from(5));
        let g = x.mul(&y);
        assert!(g.linear_parts().is_none());
        let h = g.substitute(&[Some(2.into()), None]);
        assert_eq!(h, y.scale(&2.into()));
    }
}

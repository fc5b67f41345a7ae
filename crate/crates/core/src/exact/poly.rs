//! Dense univariate polynomials with an optional Laurent offset.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::counter::tally;
use super::scalar::{powi, Scalar};
use crate::error::{Error, Result};

/// `Σ coeffs[i] · x^(low + i)`.
///
/// Canonical form: no trailing zero coefficients, and leading zeros are only
/// stripped while `low < 0`, so ordinary polynomials always have `low == 0`
/// and `coeffs[k]` is the coefficient of `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
    low: i64,
}

impl<T: Scalar> DensePoly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self::laurent(coeffs, 0)
    }

    /// `Σ coeffs[i] x^(low+i)`.
    pub fn laurent(coeffs: Vec<T>, low: i64) -> Self {
        let mut p = DensePoly { coeffs, low };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new(), low: 0 }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`; `k` may be negative.
    pub fn monomial(c: T, k: i64) -> Self {
        if k >= 0 {
            let mut v = vec![T::zero(); k as usize];
            v.push(c);
            Self::new(v)
        } else {
            Self::laurent(vec![c], k)
        }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `x + c`.
    pub fn linear(c: T) -> Self {
        Self::new(vec![c, T::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.low = 0;
            return;
        }
        let mut strip = 0;
        while self.low + (strip as i64) < 0 && self.coeffs[strip].is_zero() {
            strip += 1;
        }
        if strip > 0 {
            self.coeffs.drain(..strip);
            self.low += strip as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_laurent(&self) -> bool {
        self.low < 0
    }

    /// Degree of the top term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Exponent of the first stored coefficient.
    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    /// Stored coefficients, lowest exponent first.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> T {
        let i = k - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation. Laurent polynomials require `x != 0`.
    pub fn eval(&self, x: &T) -> T {
        tally(self.coeffs.len());
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        if self.low != 0 {
            acc = acc * powi(x, self.low);
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        tally(self.coeffs.len());
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            low: self.low,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift_exponent(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let low = self.low + k;
        if low >= 0 {
            let mut v = vec![T::zero(); low as usize];
            v.extend(self.coeffs.iter().cloned());
            Self::new(v)
        } else {
            Self::laurent(self.coeffs.clone(), low)
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`. `self` must be an ordinary polynomial; `inner` may be
    /// Laurent.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(!self.is_laurent(), "outer polynomial of a composition must be ordinary");
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn taylor_shift(&self, c: &T) -> Self {
        if self.is_laurent() {
            // x^low is not a polynomial under translation
            panic!("taylor_shift of a Laurent polynomial");
        }
        self.compose(&Self::linear(c.clone()))
    }

    /// `self(c · x)`.
    pub fn dilate(&self, c: &T) -> Self {
        tally(self.coeffs.len());
        let mut pw = powi(c, self.low);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::laurent(out, self.low)
    }

    /// Euclidean division `self = q·g + r` with `deg r < deg g`. Laurent
    /// inputs are first shifted to ordinary polynomials and the quotient and
    /// remainder are shifted back so that the identity still holds.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let (lf, lg) = (self.low, g.low);
        let f0 = Self::new(self.coeffs.clone());
        let g0 = Self::new(g.coeffs.clone());
        let (q0, r0) = f0.divrem_ordinary(&g0);
        Ok((q0.shift_exponent(lf - lg), r0.shift_exponent(lf)))
    }

    pub(crate) fn divrem_ordinary(&self, g: &Self) -> (Self, Self) {
        let dg = g.coeffs.len() - 1;
        let lead = g.coeffs[dg].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dg];
        for i in (0..q.len()).rev() {
            let t = r[i + dg].clone() / lead.clone();
            tally(dg + 1);
            if !t.is_zero() {
                for (j, gj) in g.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - t.clone() * gj.clone();
                }
            }
            q[i] = t;
        }
        r.truncate(dg);
        (Self::new(q), Self::new(r))
    }

    /// True when `g` divides `self` exactly (up to a monomial shift for
    /// Laurent inputs).
    pub fn divisible_by(&self, g: &Self) -> Result<bool> {
        Ok(self.divrem(g)?.1.is_zero())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(T::one() / l.clone())),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor of two ordinary polynomials.
    pub fn gcd(&self, other: &Self) -> Self {
        assert!(!self.is_laurent() && !other.is_laurent(), "gcd of Laurent polynomials");
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem_ordinary(&b).1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        Self::laurent(self.coeffs.iter().map(f).collect(), self.low)
    }
}

impl<T: Scalar> Add for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn add(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let coeffs = (low..=high).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        DensePoly::laurent(coeffs, low)
    }
}

impl<T: Scalar> Neg for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        DensePoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), low: self.low }
    }
}

impl<T: Scalar> Sub for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn sub(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn mul(self, rhs: &DensePoly<T>) -> DensePoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        tally(self.coeffs.len() * rhs.coeffs.len());
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::laurent(out, self.low + rhs.low)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for DensePoly<T> {
            type Output = DensePoly<T>;
            fn $m(self, rhs: DensePoly<T>) -> DensePoly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&DensePoly<T>> for DensePoly<T> {
            type Output = DensePoly<T>;
            fn $m(self, rhs: &DensePoly<T>) -> DensePoly<T> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for DensePoly<T> {
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for DensePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match self.low + i as i64 {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                k => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{powi, q_rising, rising, tally};
use crate::rational::{int, to_i64};
use crate::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "R")]
    R,
    #[serde(rename = "qR")]
    QR,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::R => "R",
            Family::QR => "qR",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Family::R),
            "qR" | "qr" | "QR" => Ok(Family::QR),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Bound parameters of a (q-)Racah system.
///
/// With `size = Some(N)` the system is finite (`a = -N` resp. `a = q^{-N}`,
/// grid `x = 0..N`); otherwise `a` is treated as a generic value and the
/// polynomials form an infinite family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSet {
    family: Family,
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    q: Rational,
    size: Option<u32>,
}

impl ParameterSet {
    pub fn racah(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        Self::build(Family::R, a, b, c, d, Rational::one(), None)
    }

    pub fn q_racah(a: Rational, b: Rational, c: Rational, d: Rational, q: Rational) -> Result<Self> {
        Self::build(Family::QR, a, b, c, d, q, None)
    }

    /// Finite system on `x = 0..N`; `a` is fixed by `N`. `q` is ignored for R.
    pub fn finite(family: Family, n: u32, b: Rational, c: Rational, d: Rational, q: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("N must be positive".into()));
        }
        let a = match family {
            Family::R => int(-(n as i64)),
            Family::QR => powi(&q, -(n as i64)),
        };
        let q = if family == Family::R { Rational::one() } else { q };
        Self::build(family, a, b, c, d, q, Some(n))
    }

    /// Same family and values with `a` free.
    pub fn new(family: Family, a: Rational, b: Rational, c: Rational, d: Rational, q: Rational) -> Result<Self> {
        let q = if family == Family::R { Rational::one() } else { q };
        Self::build(family, a, b, c, d, q, None)
    }

    fn build(
        family: Family,
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        q: Rational,
        size: Option<u32>,
    ) -> Result<Self> {
        if family == Family::QR {
            if !(q.is_positive() && q < Rational::one()) {
                return Err(Error::InvalidParameters(format!("q = {q} must lie in (0,1)")));
            }
            for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
                if v.is_zero() {
                    return Err(Error::InvalidParameters(format!("{name} must be nonzero for qR")));
                }
            }
        } else if d.is_zero() {
            // d appears as a divisor in the weight normalisation
            return Err(Error::InvalidParameters("d must be nonzero".into()));
        }
        Ok(ParameterSet { family, a, b, c, d, q, size })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }
    /// `q` for qR, `1` for R.
    pub fn q(&self) -> &Rational {
        &self.q
    }
    /// `N` in the finite case.
    pub fn size(&self) -> Option<u32> {
        self.size
    }
    pub fn is_finite(&self) -> bool {
        self.size.is_some()
    }
    pub fn is_q(&self) -> bool {
        self.family == Family::QR
    }

    /// Drops the finite-size tag, keeping the values.
    pub fn as_indeterminate(&self) -> Self {
        ParameterSet { size: None, ..self.clone() }
    }

    pub(crate) fn qpow(&self, k: i64) -> Rational {
        powi(&self.q, k)
    }

    fn with_values(&self, a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ParameterSet { family: self.family, a, b, c, d, q: self.q.clone(), size: None }
    }

    /// `λ + βδ`.
    pub fn shift(&self, beta: i64) -> Self {
        if beta == 0 {
            return self.clone();
        }
        match self.family {
            Family::R => {
                let s = int(beta);
                self.with_values(&self.a + &s, &self.b + &s, &self.c + &s, &self.d + &s)
            }
            Family::QR => {
                let s = self.qpow(beta);
                self.with_values(&self.a * &s, &self.b * &s, &self.c * &s, &self.d * &s)
            }
        }
    }

    /// `λ + βδ̃`: only `c` and `d` move.
    pub fn twisted_shift(&self, beta: i64) -> Self {
        if beta == 0 {
            return self.clone();
        }
        match self.family {
            Family::R => {
                let s = int(beta);
                self.with_values(self.a.clone(), self.b.clone(), &self.c + &s, &self.d + &s)
            }
            Family::QR => {
                let s = self.qpow(beta);
                self.with_values(self.a.clone(), self.b.clone(), &self.c * &s, &self.d * &s)
            }
        }
    }

    /// The twist `(λ₄-λ₁+1, λ₄-λ₂+1, λ₃, λ₄)`.
    pub fn twist(&self) -> Self {
        match self.family {
            Family::R => {
                let one = Rational::one();
                self.with_values(
                    &self.d - &self.a + &one,
                    &self.d - &self.b + &one,
                    self.c.clone(),
                    self.d.clone(),
                )
            }
            Family::QR => {
                let dq = &self.d * &self.q;
                self.with_values(&dq / &self.a, &dq / &self.b, self.c.clone(), self.d.clone())
            }
        }
    }

    pub fn d_tilde(&self) -> Rational {
        match self.family {
            Family::R => &self.a + &self.b + &self.c - &self.d - Rational::one(),
            Family::QR => &self.a * &self.b * &self.c / (&self.d * &self.q),
        }
    }

    pub fn alpha(&self) -> Rational {
        match self.family {
            Family::R => Rational::one(),
            Family::QR => &self.a * &self.b / (&self.d * &self.q),
        }
    }

    /// `η(x; λ + shift·δ)`; rational `x` only for R.
    pub fn eta(&self, x: &Rational, shift: i64) -> Result<Rational> {
        match self.family {
            Family::R => Ok(x * (x + &self.d + int(shift))),
            Family::QR => match to_i64(x) {
                Some(k) => Ok(self.eta_at(k, shift)),
                None => Err(Error::UnsupportedPoint(format!("qR needs integer x, got {x}"))),
            },
        }
    }

    /// `η(x; λ + shift·δ)` at integer `x`.
    pub fn eta_at(&self, x: i64, shift: i64) -> Rational {
        tally(3);
        match self.family {
            Family::R => {
                let x = int(x);
                &x * (&x + &self.d + int(shift))
            }
            Family::QR => {
                let ds = &self.d * self.qpow(shift);
                (self.qpow(-x) - Rational::one()) * (Rational::one() - ds * self.qpow(x))
            }
        }
    }

    /// `η(x + offset; λ + shift·δ)` as a function of `x`: a polynomial in `x`
    /// for R and a Laurent polynomial in `z = q^x` for qR.
    pub fn eta_xfn(&self, offset: i64, shift: i64) -> Poly {
        match self.family {
            Family::R => {
                let s = int(offset);
                let ds = &self.d + int(shift) + &s;
                &Poly::linear(s) * &Poly::linear(ds)
            }
            Family::QR => {
                let ds = &self.d * self.qpow(shift);
                let lo = self.qpow(-offset);
                let hi = &ds * self.qpow(offset);
                let mid = -(Rational::one() + ds);
                Poly::laurent(vec![lo, mid, hi], -1)
            }
        }
    }

    /// Replaces `x` by `x + k` in an x-function.
    pub fn xfn_shift(&self, f: &Poly, k: i64) -> Poly {
        match self.family {
            Family::R => f.taylor_shift(&int(k)),
            Family::QR => f.dilate(&self.qpow(k)),
        }
    }

    /// Evaluates an x-function at integer `x`.
    pub fn xfn_eval(&self, f: &Poly, x: i64) -> Rational {
        match self.family {
            Family::R => f.eval(&int(x)),
            Family::QR => f.eval(&self.qpow(x)),
        }
    }

    /// `B(x; λ)` as an x-function pair `(numerator, denominator)`.
    pub fn pot_b_xfn(&self) -> (Poly, Poly) {
        let one = Rational::one();
        match self.family {
            Family::R => {
                let num = [&self.a, &self.b, &self.c, &self.d]
                    .iter()
                    .fold(Poly::constant(-one.clone()), |acc, v| &acc * &Poly::linear((*v).clone()));
                let den = &Poly::new(vec![self.d.clone(), int(2)]) * &Poly::new(vec![&self.d + &one, int(2)]);
                (num, den)
            }
            Family::QR => {
                let num = [&self.a, &self.b, &self.c, &self.d]
                    .iter()
                    .fold(Poly::constant(-one.clone()), |acc, v| &acc * &Poly::new(vec![one.clone(), -(*v).clone()]));
                let den = &Poly::new(vec![one.clone(), Rational::zero(), -self.d.clone()])
                    * &Poly::new(vec![one.clone(), Rational::zero(), -(&self.d * &self.q)]);
                (num, den)
            }
        }
    }

    /// `D(x; λ)` as an x-function pair `(numerator, denominator)`.
    pub fn pot_d_xfn(&self) -> (Poly, Poly) {
        let one = Rational::one();
        match self.family {
            Family::R => {
                let num = [&self.a, &self.b, &self.c]
                    .iter()
                    .fold(-Poly::x(), |acc, v| &acc * &Poly::linear(&self.d - *v));
                let den = &Poly::new(vec![&self.d - &one, int(2)]) * &Poly::new(vec![self.d.clone(), int(2)]);
                (num, den)
            }
            Family::QR => {
                let start = Poly::new(vec![-self.d_tilde(), self.d_tilde()]);
                let num = [&self.a, &self.b, &self.c]
                    .iter()
                    .fold(start, |acc, v| &acc * &Poly::new(vec![one.clone(), -(&self.d / *v)]));
                let den = &Poly::new(vec![one.clone(), Rational::zero(), -(&self.d / &self.q)])
                    * &Poly::new(vec![one.clone(), Rational::zero(), -self.d.clone()]);
                (num, den)
            }
        }
    }

    /// Applies the reflection `x -> -x - d'` of `η(x; λ+shift·δ)` to an
    /// x-function; functions of that `η` are exactly the fixed points.
    pub fn xfn_reflect(&self, f: &Poly, shift: i64) -> Poly {
        match self.family {
            Family::R => f.compose(&Poly::new(vec![-(&self.d + int(shift)), -Rational::one()])),
            Family::QR => {
                // z = q^x  ->  1/(d' z)
                let ds = &self.d * self.qpow(shift);
                let lo = -f.degree().unwrap_or(0);
                let mut out = Vec::new();
                for k in (f.lowest_exponent()..=f.degree().unwrap_or(0)).rev() {
                    out.push(f.coeff(k) * powi(&ds, -k));
                }
                Poly::laurent(out, lo)
            }
        }
    }

    pub fn energy(&self, n: i64) -> Rational {
        tally(3);
        let dt = self.d_tilde();
        match self.family {
            Family::R => int(n) * (int(n) + dt),
            Family::QR => (self.qpow(-n) - Rational::one()) * (Rational::one() - dt * self.qpow(n)),
        }
    }

    pub fn virtual_energy(&self, v: i64) -> Rational {
        tally(3);
        let dt = self.d_tilde();
        match self.family {
            Family::R => {
                let cv = &self.c + int(v);
                -(&cv * (dt - &cv))
            }
            Family::QR => {
                let one = Rational::one();
                -((&one - &self.c * self.qpow(v)) * (&one - dt * self.qpow(-v) / &self.c))
            }
        }
    }

    /// `B(x; λ)`.
    pub fn pot_b(&self, x: i64) -> Result<Rational> {
        tally(10);
        let one = Rational::one();
        let (num, den) = match self.family {
            Family::R => {
                let x = int(x);
                let num = -((&x + &self.a) * (&x + &self.b) * (&x + &self.c) * (&x + &self.d));
                let den = (int(2) * &x + &self.d) * (int(2) * &x + &one + &self.d);
                (num, den)
            }
            Family::QR => {
                let z = self.qpow(x);
                let num = -((&one - &self.a * &z) * (&one - &self.b * &z) * (&one - &self.c * &z) * (&one - &self.d * &z));
                let z2 = self.qpow(2 * x);
                let den = (&one - &self.d * &z2) * (&one - &self.d * &z2 * &self.q);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleAtGridPoint { what: "B", x });
        }
        Ok(num / den)
    }

    /// `D(x; λ)`.
    pub fn pot_d(&self, x: i64) -> Result<Rational> {
        tally(10);
        if x == 0 {
            return Ok(Rational::zero());
        }
        let one = Rational::one();
        let (num, den) = match self.family {
            Family::R => {
                let xr = int(x);
                let xd = &xr + &self.d;
                let num = -((&xd - &self.a) * (&xd - &self.b) * (&xd - &self.c) * &xr);
                let den = (int(2) * &xr - &one + &self.d) * (int(2) * &xr + &self.d);
                (num, den)
            }
            Family::QR => {
                let z = self.qpow(x);
                let dz = &self.d * &z;
                let num = -(self.d_tilde()
                    * (&one - &dz / &self.a)
                    * (&one - &dz / &self.b)
                    * (&one - &dz / &self.c)
                    * (&one - &z));
                let dz2 = &self.d * self.qpow(2 * x);
                let den = (&one - &dz2 / &self.q) * (&one - &dz2);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleAtGridPoint { what: "D", x });
        }
        Ok(num / den)
    }

    /// `A_n`; `A_{-1} = 0`.
    pub fn coef_a(&self, n: i64) -> Result<Rational> {
        tally(10);
        if n < 0 {
            return Ok(Rational::zero());
        }
        let one = Rational::one();
        let dt = self.d_tilde();
        let (num, den) = match self.family {
            Family::R => {
                let n = int(n);
                let num = (&n + &self.a) * (&n + &self.b) * (&n + &self.c) * (&n + &dt);
                let den = (int(2) * &n + &dt) * (int(2) * &n + &one + &dt);
                (num, den)
            }
            Family::QR => {
                let t = self.qpow(n);
                let num = (&one - &self.a * &t) * (&one - &self.b * &t) * (&one - &self.c * &t) * (&one - &dt * &t);
                let t2 = self.qpow(2 * n);
                let den = (&one - &dt * &t2) * (&one - &dt * &t2 * &self.q);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleInCoefficient { what: "A", n });
        }
        Ok(num / den)
    }

    /// `C_n`; zero for `n <= 0`.
    pub fn coef_c(&self, n: i64) -> Result<Rational> {
        tally(10);
        if n <= 0 {
            return Ok(Rational::zero());
        }
        let one = Rational::one();
        let dt = self.d_tilde();
        let (num, den) = match self.family {
            Family::R => {
                let nr = int(n);
                let nd = &nr + &dt;
                let num = (&nd - &self.a) * (&nd - &self.b) * (&nd - &self.c) * &nr;
                let den = (int(2) * &nr - &one + &dt) * (int(2) * &nr + &dt);
                (num, den)
            }
            Family::QR => {
                let t = self.qpow(n);
                let dtt = &dt * &t;
                let num = &self.d
                    * (&one - &dtt / &self.a)
                    * (&one - &dtt / &self.b)
                    * (&one - &dtt / &self.c)
                    * (&one - &t);
                let dt2 = &dt * self.qpow(2 * n);
                let den = (&one - &dt2 / &self.q) * (&one - &dt2);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleInCoefficient { what: "C", n });
        }
        Ok(num / den)
    }

    /// `(A_n, B_n, C_n)` with `B_n = -A_n - C_n`.
    pub fn ttrc(&self, n: i64) -> Result<(Rational, Rational, Rational)> {
        let a = self.coef_a(n)?;
        let c = self.coef_c(n)?;
        let b = -(&a + &c);
        Ok((a, b, c))
    }

    /// `P_0 .. P_{n_max}` as polynomials in `η`, from the three-term recurrence.
    pub fn racah_polys(&self, n_max: usize) -> Result<Vec<Poly>> {
        let mut out = vec![Poly::one()];
        let eta = Poly::x();
        let mut prev = Poly::zero();
        for n in 0..n_max {
            let (a, b, c) = self.ttrc(n as i64)?;
            if a.is_zero() {
                return Err(Error::PoleInCoefficient { what: "1/A", n: n as i64 });
            }
            let cur = &out[n];
            let t = &(&(&eta * cur) - &cur.scale(&b)) - &prev.scale(&c);
            let next = t.scale(&(Rational::one() / a));
            prev = cur.clone();
            out.push(next);
        }
        Ok(out)
    }

    pub fn racah_poly(&self, n: usize) -> Result<Poly> {
        Ok(self.racah_polys(n)?.pop().expect("nonempty"))
    }

    /// Virtual state polynomial `ξ_v(η; λ) = P_v(η; t(λ))`.
    pub fn xi_v(&self, v: usize) -> Result<Poly> {
        self.twist().racah_poly(v)
    }

    /// Leading coefficient `c_n` of `P_n`.
    pub fn lead_c(&self, n: usize) -> Rational {
        let (num, den) = self.lead_c_parts(n);
        num / den
    }

    fn lead_c_parts(&self, n: usize) -> (Rational, Rational) {
        let dt = self.d_tilde();
        match self.family {
            Family::R => {
                (rising(&(&dt + int(n as i64)), n), rising(&self.a, n) * rising(&self.b, n) * rising(&self.c, n))
            }
            Family::QR => {
                let q = &self.q;
                (
                    q_rising(&(&dt * self.qpow(n as i64)), q, n),
                    q_rising(&self.a, q, n) * q_rising(&self.b, q, n) * q_rising(&self.c, q, n),
                )
            }
        }
    }

    /// Leading coefficient `c̃_v` of `ξ_v`.
    pub fn lead_c_tilde(&self, v: usize) -> Rational {
        let one = Rational::one();
        match self.family {
            Family::R => {
                let top = &self.c + &self.d - &self.a - &self.b + int(v as i64) + &one;
                rising(&top, v)
                    / (rising(&(&self.d - &self.a + &one), v) * rising(&(&self.d - &self.b + &one), v) * rising(&self.c, v))
            }
            Family::QR => {
                let q = &self.q;
                let top = &self.c * &self.d * self.qpow(v as i64 + 1) / (&self.a * &self.b);
                let dq = &self.d * q;
                q_rising(&top, q, v)
                    / (q_rising(&(&dq / &self.a), q, v) * q_rising(&(&dq / &self.b), q, v) * q_rising(&self.c, q, v))
            }
        }
    }

    /// `φ(x; λ) = (η(x+1) - η(x))/η(1)`.
    pub fn phi(&self, x: i64) -> Rational {
        (self.eta_at(x + 1, 0) - self.eta_at(x, 0)) / self.eta_at(1, 0)
    }

    /// `φ_M(x; λ)`.
    pub fn phi_m(&self, x: i64, m: usize) -> Result<Rational> {
        tally(m * m.saturating_sub(1));
        let mut acc = Rational::one();
        for j in 1..=m as i64 {
            for k in j + 1..=m as i64 {
                let den = self.eta_at(k - j, 0);
                if den.is_zero() {
                    return Err(Error::AssumptionViolated(format!("η({}) vanishes", k - j)));
                }
                acc *= (self.eta_at(x + k - 1, 0) - self.eta_at(x + j - 1, 0)) / den;
            }
        }
        Ok(acc)
    }

    /// `r_j(x_j; λ, M)`, `1 <= j <= M+1`, as a function of the base point `x`.
    pub fn r_j(&self, j: usize, x: i64, m: usize) -> Result<Rational> {
        tally(6);
        let one = Rational::one();
        let jm = j - 1;
        let rest = m + 1 - j;
        let (num, den) = match self.family {
            Family::R => {
                let xr = int(x);
                let d1 = &self.d - &self.a + &one;
                let d2 = &self.d - &self.b + &one;
                let jx = &xr + int(j as i64) - &one;
                let num = rising(&(&xr + &self.a), jm)
                    * rising(&(&xr + &self.b), jm)
                    * rising(&(&jx + &d1), rest)
                    * rising(&(&jx + &d2), rest);
                (num, rising(&d1, m) * rising(&d2, m))
            }
            Family::QR => {
                let q = &self.q;
                let z = self.qpow(x);
                let dqj = &self.d * self.qpow(x + j as i64);
                let dq = &self.d * q;
                let num = q_rising(&(&self.a * &z), q, jm)
                    * q_rising(&(&self.b * &z), q, jm)
                    * q_rising(&(&dqj / &self.a), q, rest)
                    * q_rising(&(&dqj / &self.b), q, rest);
                let den = powi(&self.alpha(), jm as i64)
                    * self.qpow(m as i64 * x)
                    * q_rising(&(&dq / &self.a), q, m)
                    * q_rising(&(&dq / &self.b), q, m);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::AssumptionViolated(format!("r_{j} normalisation vanishes")));
        }
        Ok(num / den)
    }

    /// Advisory check of the ranges that guarantee positivity of the weight
    /// and norms; returns the violated conditions.
    pub fn range_issues(&self) -> Vec<String> {
        let mut out = Vec::new();
        let zero = Rational::zero();
        let one = Rational::one();
        match self.family {
            Family::R => {
                if !(self.d > zero && self.d < &self.a + &self.b) {
                    out.push("0 < d < a+b".to_string());
                }
                if !(self.c > zero && self.c < &one + &self.d) {
                    out.push("0 < c < 1+d".to_string());
                }
            }
            Family::QR => {
                let ab = &self.a * &self.b;
                if !(ab > zero && ab < self.d && self.d < one) {
                    out.push("0 < ab < d < 1".to_string());
                }
                if !(&self.q * &self.d < self.c && self.c < one) {
                    out.push("qd < c < 1".to_string());
                }
            }
        }
        out
    }

    /// Advisory range check for an index set with maximal entry `d_max`.
    pub fn multi_range_issues(&self, d_max: usize) -> Vec<String> {
        let mut out = self.range_issues();
        let k = d_max as i64 + 1;
        match self.family {
            Family::R => {
                if !(&self.d + int(k) < &self.a + &self.b) {
                    out.push(format!("d + {k} < a+b"));
                }
            }
            Family::QR => {
                if !(&self.a * &self.b < &self.d * self.qpow(k)) {
                    out.push(format!("ab < d q^{k}"));
                }
            }
        }
        out
    }

    /// Zeros among the denominators and factors that the generic
    /// (infinite-family) constructions divide by, for indices up to `n_max`.
    pub fn genericity_issues(&self, n_max: usize) -> Vec<String> {
        let mut out = Vec::new();
        let tw = self.twist();
        for n in 0..=n_max as i64 {
            for (label, p) in [("λ", self), ("t(λ)", &tw)] {
                match p.coef_a(n) {
                    Ok(a) if a.is_zero() => out.push(format!("A_{n}({label}) = 0")),
                    Err(e) => out.push(format!("{label}: {e}")),
                    _ => {}
                }
                if let Err(e) = p.coef_c(n) {
                    out.push(format!("{label}: {e}"));
                }
            }
            for s in 0..3 {
                let (num, den) = self.shift(s).lead_c_parts(n as usize);
                if num.is_zero() {
                    out.push(format!("c_{n}(λ+{s}δ) = 0"));
                }
                if den.is_zero() {
                    out.push(format!("c_{n}(λ+{s}δ) has a pole"));
                }
            }
        }
        for x in 1..=(2 * n_max as i64 + 4) {
            if self.eta_at(x, 0).is_zero() {
                out.push(format!("η({x}) = 0"));
            }
        }
        out
    }

    /// Weight `φ₀(x)²`.
    pub fn phi0_sq(&self, x: usize) -> Result<Rational> {
        let one = Rational::one();
        let (num, den) = match self.family {
            Family::R => {
                let d1 = &self.d - &self.a + &one;
                let d2 = &self.d - &self.b + &one;
                let d3 = &self.d - &self.c + &one;
                let num = rising(&self.a, x) * rising(&self.b, x) * rising(&self.c, x) * rising(&self.d, x)
                    * (int(2 * x as i64) + &self.d);
                let den = rising(&d1, x) * rising(&d2, x) * rising(&d3, x) * rising(&one, x) * &self.d;
                (num, den)
            }
            Family::QR => {
                let q = &self.q;
                let dq = &self.d * q;
                let num = q_rising(&self.a, q, x)
                    * q_rising(&self.b, q, x)
                    * q_rising(&self.c, q, x)
                    * q_rising(&self.d, q, x)
                    * (&one - &self.d * self.qpow(2 * x as i64));
                let den = q_rising(&(&dq / &self.a), q, x)
                    * q_rising(&(&dq / &self.b), q, x)
                    * q_rising(&(&dq / &self.c), q, x)
                    * q_rising(q, q, x)
                    * powi(&self.d_tilde(), x as i64)
                    * (&one - &self.d);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleAtGridPoint { what: "φ₀²", x: x as i64 });
        }
        Ok(num / den)
    }

    /// Norm constant `d_n²` of the finite system.
    pub fn norm_sq(&self, n: usize) -> Result<Rational> {
        let big_n = self
            .size
            .ok_or_else(|| Error::InvalidParameters("norms need a finite system".into()))? as usize;
        let one = Rational::one();
        let dt = self.d_tilde();
        let sign = if big_n.is_multiple_of(2) { one.clone() } else { -one.clone() };
        let (num, den) = match self.family {
            Family::R => {
                let num = rising(&self.a, n) * rising(&self.b, n) * rising(&self.c, n) * rising(&dt, n)
                    * (int(2 * n as i64) + &dt)
                    * sign
                    * rising(&(&self.d - &self.a + &one), big_n)
                    * rising(&(&self.d - &self.b + &one), big_n)
                    * rising(&(&self.d - &self.c + &one), big_n);
                let den = rising(&(&dt - &self.a + &one), n)
                    * rising(&(&dt - &self.b + &one), n)
                    * rising(&(&dt - &self.c + &one), n)
                    * rising(&one, n)
                    * &dt
                    * rising(&(&dt + &one), big_n)
                    * rising(&(&self.d + &one), 2 * big_n);
                (num, den)
            }
            Family::QR => {
                let q = &self.q;
                let dtq = &dt * q;
                let dq = &self.d * q;
                let num = q_rising(&self.a, q, n)
                    * q_rising(&self.b, q, n)
                    * q_rising(&self.c, q, n)
                    * q_rising(&dt, q, n)
                    * (&one - &dt * self.qpow(2 * n as i64))
                    * sign
                    * q_rising(&(&dq / &self.a), q, big_n)
                    * q_rising(&(&dq / &self.b), q, big_n)
                    * q_rising(&(&dq / &self.c), q, big_n)
                    * powi(&dt, big_n as i64)
                    * self.qpow((big_n * (big_n + 1) / 2) as i64);
                let den = q_rising(&(&dtq / &self.a), q, n)
                    * q_rising(&(&dtq / &self.b), q, n)
                    * q_rising(&(&dtq / &self.c), q, n)
                    * q_rising(q, q, n)
                    * powi(&self.d, n as i64)
                    * (&one - &dt)
                    * q_rising(&dtq, q, big_n)
                    * q_rising(&dq, q, 2 * big_n);
                (num, den)
            }
        };
        if den.is_zero() {
            return Err(Error::PoleInCoefficient { what: "d_n²", n: n as i64 });
        }
        Ok(num / den)
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(a={}, b={}, c={}, d={}", self.family, self.a, self.b, self.c, self.d)?;
        if self.family == Family::QR {
            write!(f, ", q={}", self.q)?;
        }
        if let Some(n) = self.size {
            write!(f, ", N={n}")?;
        }
        write!(f, ")")
    }
}

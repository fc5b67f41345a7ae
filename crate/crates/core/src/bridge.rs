//! Correspondence between multi-indexed (q-)Racah polynomials with type-I
//! index sets and multi-indexed (Askey-)Wilson polynomials.
//!
//! The (A)W side is never built from scratch: its polynomials are the
//! (q)R ones after the affine change of variable of the replacement rule,
//! normalised to be monic in the (A)W variable `η′`.

use num_traits::{One, Zero};

use crate::base::{Family, ParameterSet};
use crate::error::{Error, Result};
use crate::exact::{powi, q_rising, rising};
use crate::multi::{IndexSet, MultiIndexedFamily};
use crate::rational::{int, sqrt_exact};
use crate::recconst::ConstCoeffs;
use crate::report::Report;
use crate::{Poly, Rational};

/// `(a_1, a_2, a_3, a_4)` of the Wilson (from R) or Askey-Wilson (from qR)
/// polynomials, with the number of type-I indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AWParameters {
    pub family: Family,
    pub a: [Rational; 4],
    pub q: Rational,
    pub m1: usize,
    pub m2: usize,
}

impl AWParameters {
    /// Undoes the `−½λ_4 δ` shift.
    pub fn to_racah(&self) -> Result<ParameterSet> {
        let [a1, a2, a3, a4] = &self.a;
        match self.family {
            Family::R => ParameterSet::racah(a1 + a4, a2 + a4, a3 + a4, a4 + a4),
            Family::QR => ParameterSet::q_racah(a1 * a4, a2 * a4, a3 * a4, a4 * a4, self.q.clone()),
        }
    }

    fn sqrt_q_pow(&self, m: usize) -> Result<Rational> {
        let h = sqrt_exact(&self.q).ok_or_else(|| Error::IrrationalShift(format!("q^(1/2), q = {}", self.q)))?;
        Ok(powi(&h, m as i64))
    }

    /// `η_0`: `−(a_4 + M/2)²` (W) or `½(a_4 q^{M/2} + a_4^{-1} q^{-M/2})` (AW).
    pub fn eta0(&self) -> Result<Rational> {
        let a4 = &self.a[3];
        match self.family {
            Family::R => {
                let t = a4 + Rational::new((self.m1 as i64).into(), 2.into());
                Ok(-(&t * &t))
            }
            Family::QR => {
                let t = a4 * self.sqrt_q_pow(self.m1)?;
                Ok((&t + Rational::one() / &t) / int(2))
            }
        }
    }
}

/// Replacement rule `λ^{(A)W} = λ^{(q)R} − ½λ_4 δ`: `a_i − d/2` for W,
/// `a_i d^{-1/2}` for AW.
pub fn map_params(lam: &ParameterSet, m: usize) -> Result<AWParameters> {
    let vals = [lam.a(), lam.b(), lam.c(), lam.d()];
    let a = match lam.family() {
        Family::R => {
            let h = lam.d() / int(2);
            vals.map(|v| v - &h)
        }
        Family::QR => {
            let s = sqrt_exact(lam.d()).ok_or_else(|| Error::IrrationalShift(format!("d^(1/2), d = {}", lam.d())))?;
            vals.map(|v| v / &s)
        }
    };
    Ok(AWParameters { family: lam.family(), a, q: lam.q().clone(), m1: m, m2: 0 })
}

/// `(α, β)` with `η = α η′ + β`, `η` the variable of `P_{D,n}`.
fn affine(lam: &ParameterSet, m: usize) -> Result<(Rational, Rational)> {
    match lam.family() {
        Family::R => {
            let t = lam.d() + int(m as i64);
            Ok((-Rational::one(), -(&t * &t) / int(4)))
        }
        Family::QR => {
            let dq = lam.d() * powi(lam.q(), m as i64);
            let s = sqrt_exact(&dq).ok_or_else(|| Error::IrrationalShift(format!("(d q^M)^(1/2) = ({dq})^(1/2)")))?;
            Ok((int(2) * s, -(Rational::one() + dq)))
        }
    }
}

/// Transported family: `polys[n]` is monic in `η′`, and
/// `P_{D,n}(η) = scale[n] · polys[n](η′)`.
#[derive(Clone, Debug)]
pub struct AwFamily {
    pub params: AWParameters,
    pub set: IndexSet,
    pub polys: Vec<Poly>,
    pub scale: Vec<Rational>,
    alpha: Rational,
    beta: Rational,
}

impl AwFamily {
    /// `X′(η′) = X(α η′ + β)`.
    pub fn transport(&self, x: &Poly) -> Poly {
        x.compose(&Poly::new(vec![self.beta.clone(), self.alpha.clone()]))
    }

    /// `r′_{n,k} = r_{n,k} · scale[n+k] / scale[n]`, the coefficients in the
    /// monic normalisation.
    pub fn rescale(&self, n: usize, k: i64, r: &Rational) -> Rational {
        let m = (n as i64 + k) as usize;
        r * &self.scale[m] / &self.scale[n]
    }
}

pub fn to_aw(fam: &MultiIndexedFamily) -> Result<AwFamily> {
    let lam = fam.lambda();
    let m = fam.m();
    let params = map_params(lam, m)?;
    let (alpha, beta) = affine(lam, m)?;
    let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
    let mut polys = Vec::with_capacity(fam.polys().len());
    let mut scale = Vec::with_capacity(fam.polys().len());
    for p in fam.polys() {
        let t = p.compose(&inner);
        let l = t.lead().cloned().ok_or_else(|| Error::InvalidInput("zero polynomial in family".into()))?;
        polys.push(t.scale(&(Rational::one() / &l)));
        scale.push(l);
    }
    Ok(AwFamily { params, set: fam.index_set().clone(), polys, scale, alpha, beta })
}

/// The closed form of `P_{D,n}(η_0)` for the monic (A)W polynomial with a
/// type-I index set.
pub fn eta0_value(aw: &AWParameters, set: &IndexSet, n: usize) -> Result<Rational> {
    if aw.m2 != 0 {
        return Err(Error::UnsupportedIndexType);
    }
    let [a1, a2, a3, a4] = &aw.a;
    let ds = set.as_slice();
    let ell = set.ell();
    let one = Rational::one();
    let mut v = one.clone();
    match aw.family {
        Family::R => {
            let u = a4 - a1 + &one;
            let w = a4 - a2 + &one;
            let s = a3 + a4;
            let e = a3 + a4 - a1 - a2;
            if (ell + n) % 2 == 1 {
                v = -v;
            }
            for (j, &d) in ds.iter().enumerate() {
                v *= rising(&u, d) * rising(&w, d) * rising(&s, d) / rising(&(&e + int(d as i64 + 1)), d);
                v /= rising(&u, j) * rising(&w, j) * rising(&s, j);
                for &dk in &ds[j + 1..] {
                    v *= &e + int((d + dk + 1) as i64);
                }
                v *= (&s + int((d + n) as i64)) / (&s + int(j as i64));
            }
            let n_i = n as i64;
            v *= rising(&(a1 + a4), n) * rising(&(a2 + a4), n) * rising(&s, n)
                / rising(&(a1 + a2 + a3 + a4 + int(n_i - 1)), n);
        }
        Family::QR => {
            let q = &aw.q;
            let qp = |k: i64| powi(q, k);
            let u = a4 * q / a1;
            let w = a4 * q / a2;
            let s = a3 * a4;
            let e = a3 * a4 / (a1 * a2);
            let base = int(2) * a4 * aw.sqrt_q_pow(aw.m1)?;
            v = powi(&base, -((ell + n) as i64));
            for (j, &d) in ds.iter().enumerate() {
                let di = d as i64;
                v *= q_rising(&u, q, d) * q_rising(&w, q, d) * q_rising(&s, q, d)
                    / q_rising(&(&e * qp(di + 1)), q, d);
                v /= q_rising(&u, q, j) * q_rising(&w, q, j) * q_rising(&s, q, j);
                for &dk in &ds[j + 1..] {
                    v *= &one - &e * qp(di + dk as i64 + 1);
                }
                v *= (&one - &s * qp(di + n as i64)) / (&one - &s * qp(j as i64));
            }
            v *= q_rising(&(a1 * a4), q, n) * q_rising(&(a2 * a4), q, n) * q_rising(&s, q, n)
                / q_rising(&(a1 * a2 * a3 * a4 * qp(n as i64 - 1)), q, n);
        }
    }
    Ok(v)
}

/// Compares every transported polynomial at `η_0` with [`eta0_value`].
pub fn eta0_spot_check(aw: &AwFamily) -> Result<Report> {
    let eta0 = aw.params.eta0()?;
    let mut rep = Report::new();
    let mut bad = None;
    for (n, p) in aw.polys.iter().enumerate() {
        if p.eval(&eta0) != eta0_value(&aw.params, &aw.set, n)? {
            bad = Some(format!("n={n}"));
            break;
        }
    }
    rep.record("bridge.eta0_value", bad);
    Ok(rep)
}

/// Leading-term elimination of `X′ P′_n` against the monic transported
/// polynomials; the result must be the rescaled `r`-table.
pub fn transport_check(aw: &AwFamily, c: &ConstCoeffs) -> Result<Report> {
    let xt = aw.transport(&c.x);
    let ell = aw.set.ell() as i64;
    let l = c.l as i64;
    let mut rep = Report::new();
    let mut bad = None;
    'rows: for &n in c.rows.keys() {
        if n + c.l >= aw.polys.len() {
            continue;
        }
        let mut rem = &xt * &aw.polys[n];
        for k in (-l..=l).rev() {
            let m = n as i64 + k;
            let got = if m < 0 {
                Rational::zero()
            } else {
                let v = rem.coeff(m + ell);
                rem = &rem - &aw.polys[m as usize].scale(&v);
                v
            };
            let want = if m < 0 { Rational::zero() } else { aw.rescale(n, k, &c.r(n, k)) };
            if got != want {
                bad = Some(format!("n={n}, k={k}"));
                break 'rows;
            }
        }
        if !rem.is_zero() {
            bad = Some(format!("n={n}: nonzero remainder"));
            break;
        }
    }
    rep.record("bridge.transport", bad);
    Ok(rep)
}

/// `r′_{n,0} = X′(η_0) − Σ_{k≠0} P′_{D,n+k}(η_0)/P′_{D,n}(η_0) · r′_{n,k}`
/// with the `η_0` values taken from the closed form.
pub fn rn0_identity_check(aw: &AwFamily, c: &ConstCoeffs) -> Result<Report> {
    let eta0 = aw.params.eta0()?;
    let x0 = aw.transport(&c.x).eval(&eta0);
    let l = c.l as i64;
    let mut rep = Report::new();
    let mut bad = None;
    for &n in c.rows.keys() {
        if n + c.l >= aw.polys.len() {
            continue;
        }
        let pn = eta0_value(&aw.params, &aw.set, n)?;
        if pn.is_zero() {
            return Err(Error::UnsupportedPoint(format!("P_(D,{n})(η_0) vanishes")));
        }
        let mut rhs = x0.clone();
        for k in (-l..=l).filter(|&k| k != 0) {
            let m = n as i64 + k;
            if m < 0 {
                continue;
            }
            rhs -= eta0_value(&aw.params, &aw.set, m as usize)? / &pn * aw.rescale(n, k, &c.r(n, k));
        }
        if rhs != c.r(n, 0) {
            bad = Some(format!("n={n}"));
            break;
        }
    }
    rep.record("bridge.rn0_identity", bad);
    Ok(rep)
}

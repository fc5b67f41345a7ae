//! Normalisation constants and leading coefficients in closed form.

use num_traits::{One, Zero};

use super::IndexSet;
use crate::base::{Family, ParameterSet};
use crate::error::{Error, Result};
use crate::exact::{q_rising, rising};
use crate::rational::int;
use crate::Rational;

fn alpha_bp(lam: &ParameterSet, j: usize) -> Result<Rational> {
    let v = lam.alpha() * lam.twist().pot_b(j as i64 - 1)?;
    if v.is_zero() {
        return Err(Error::AssumptionViolated(format!("α B'({}) vanishes", j as i64 - 1)));
    }
    Ok(v)
}

/// `C_D(λ)`.
pub fn c_d(lam: &ParameterSet, set: &IndexSet) -> Result<Rational> {
    let d = set.as_slice();
    let m = d.len();
    let mut acc = Rational::one() / lam.phi_m(0, m)?;
    for j in 1..=m {
        for k in j + 1..=m {
            acc *= (lam.virtual_energy(d[j - 1] as i64) - lam.virtual_energy(d[k - 1] as i64)) / alpha_bp(lam, j)?;
        }
    }
    if acc.is_zero() {
        return Err(Error::AssumptionViolated("C_D vanishes".into()));
    }
    Ok(acc)
}

/// `d̃_{D,n}(λ)²`.
pub fn d_tilde_dn_sq(lam: &ParameterSet, set: &IndexSet, n: usize) -> Result<Rational> {
    let m = set.m();
    let mut acc = lam.phi_m(0, m)? / lam.phi_m(0, m + 1)?;
    let e = lam.energy(n as i64);
    for (j, &dj) in set.as_slice().iter().enumerate() {
        acc *= (&e - lam.virtual_energy(dj as i64)) / alpha_bp(lam, j + 1)?;
    }
    Ok(acc)
}

/// `C_{D,n}(λ) = (−1)^M C_D d̃_{D,n}²`.
pub fn c_dn(lam: &ParameterSet, set: &IndexSet, n: usize) -> Result<Rational> {
    let v = c_d(lam, set)? * d_tilde_dn_sq(lam, set, n)?;
    let v = if set.m() % 2 == 1 { -v } else { v };
    if v.is_zero() {
        return Err(Error::AssumptionViolated(format!("C_(D,{n}) vanishes")));
    }
    Ok(v)
}

/// Leading coefficient `c^Ξ_D` of `Ξ_D(η)`.
pub fn lead_xi(lam: &ParameterSet, set: &IndexSet) -> Rational {
    let d = set.as_slice();
    let m = d.len();
    let one = Rational::one();
    let (a, b, c, dd) = (lam.a(), lam.b(), lam.c(), lam.d());
    let mut acc: Rational = d.iter().map(|&v| lam.lead_c_tilde(v)).product();
    match lam.family() {
        Family::R => {
            let (t1, t2) = (dd - a + &one, dd - b + &one);
            for j in 1..=m {
                acc *= rising(&t1, j - 1) * rising(&t2, j - 1) * rising(c, j - 1);
                for k in j + 1..=m {
                    acc /= c + dd - a - b + int((d[j - 1] + d[k - 1] + 1) as i64);
                }
            }
        }
        Family::QR => {
            let q = lam.q();
            let dq = dd * q;
            let (t1, t2) = (&dq / a, &dq / b);
            let base = c * dd / (a * b);
            for j in 1..=m {
                acc *= q_rising(&t1, q, j - 1) * q_rising(&t2, q, j - 1) * q_rising(c, q, j - 1);
                for k in j + 1..=m {
                    acc /= &one - &base * lam.qpow((d[j - 1] + d[k - 1] + 1) as i64);
                }
            }
        }
    }
    acc
}

/// Leading coefficient `c^P_{D,n}` of `P_{D,n}(η)`.
pub fn lead_p(lam: &ParameterSet, set: &IndexSet, n: usize) -> Rational {
    let mut acc = lead_xi(lam, set) * lam.lead_c(n);
    let one = Rational::one();
    let c = lam.c();
    for (j, &dj) in set.as_slice().iter().enumerate() {
        match lam.family() {
            Family::R => acc *= (c + int(j as i64)) / (c + int((dj + n) as i64)),
            Family::QR => acc *= (&one - c * lam.qpow(j as i64)) / (&one - c * lam.qpow((dj + n) as i64)),
        }
    }
    acc
}

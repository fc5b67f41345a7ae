use num_traits::{One, Zero};

use super::consts::{d_tilde_dn_sq, lead_p, lead_xi};
use super::family::{xi_d, MultiIndexedFamily};
use super::IndexSet;
use crate::base::{GridFunction, ParameterSet};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::{Matrix, Rational};

/// Deformed system on the finite grid.
#[derive(Clone, Debug)]
pub struct Deformed {
    pub b_d: GridFunction,
    pub d_d: GridFunction,
    /// Similarity-transformed Hamiltonian, acting on `P̌_{D,n}` with
    /// eigenvalue `E_n`.
    pub h: Matrix,
    /// `ψ_D(x)²`, normalised to `ψ_D(0)² = 1`.
    pub psi_sq: GridFunction,
    /// `d_{D,n}²` for `n = 0..=N`.
    pub d_dn_sq: Vec<Rational>,
}

/// Builds `B_D`, `D_D`, the operator `H̃_D`, `ψ_D²` and the norms.
pub fn deformed(set: &IndexSet, lam: &ParameterSet) -> Result<Deformed> {
    let big_n = lam.size().ok_or_else(|| Error::InvalidParameters("deformed system needs a finite N".into()))? as i64;
    let m = set.m() as i64;
    let xi = xi_d(set, lam)?;
    let xi_up = xi_d(set, &lam.shift(1))?;
    // Ξ̌_D(x; λ) and Ξ̌_D(x; λ+δ) for x = -1..=N+1
    let xc = |x: i64| xi.eval(&lam.eta_at(x, m - 1));
    let xu = |x: i64| xi_up.eval(&lam.eta_at(x, m));
    let xs: Vec<Rational> = (0..=big_n + 1).map(xc).collect();
    if let Some(x) = xs.iter().position(|v| v.is_zero()) {
        return Err(Error::SingularDeformation { x: x as i64 });
    }
    let lt = lam.twisted_shift(m);
    let mut b_d = Vec::new();
    let mut d_d = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for x in 0..=big_n {
        let i = x as usize;
        let b = lt.pot_b(x)?;
        let d = lt.pot_d(x)?;
        if b.is_zero() {
            b_d.push(Rational::zero());
            upper.push(Rational::zero());
        } else {
            let u = &b * &xs[i] / &xs[i + 1];
            let (num, den) = (xu(x + 1), xu(x));
            if den.is_zero() {
                return Err(Error::SingularDeformation { x });
            }
            b_d.push(&u * num / den);
            upper.push(-u);
        }
        if d.is_zero() {
            d_d.push(Rational::zero());
            lower.push(Rational::zero());
        } else {
            let l = &d * &xs[i + 1] / &xs[i];
            let (num, den) = (xu(x - 1), xu(x));
            if den.is_zero() {
                return Err(Error::SingularDeformation { x });
            }
            d_d.push(&l * num / den);
            lower.push(-l);
        }
    }
    let size = big_n as usize + 1;
    let h = Matrix::from_fn(size, size, |i, j| {
        if i == j {
            &b_d[i] + &d_d[i]
        } else if j == i + 1 {
            upper[i].clone()
        } else if i == j + 1 {
            lower[i].clone()
        } else {
            Rational::zero()
        }
    });
    let xi1 = &xs[1];
    let psi_sq = (0..size)
        .map(|x| Ok(xi1 * lt.phi0_sq(x)? / (&xs[x] * &xs[x + 1])))
        .collect::<Result<Vec<_>>>()?;
    let d_dn_sq = (0..size)
        .map(|n| Ok(lam.norm_sq(n)? * d_tilde_dn_sq(lam, set, n)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Deformed {
        b_d: GridFunction { values: b_d },
        d_d: GridFunction { values: d_d },
        h,
        psi_sq: GridFunction { values: psi_sq },
        d_dn_sq,
    })
}

/// Exact checks of a finite multi-indexed family: normalisation, degrees,
/// leading coefficients, polynomiality, shape invariance, eigen-equation and
/// orthogonality, for `n = 0..=n_max`.
pub fn verify_family(set: &IndexSet, lam: &ParameterSet, n_max: usize) -> Result<Report> {
    let big_n = lam.size().ok_or_else(|| Error::InvalidParameters("family verification needs a finite N".into()))?
        as usize;
    let n_max = n_max.min(big_n);
    let fam = MultiIndexedFamily::build(lam, set, n_max)?;
    let ell = set.ell();
    let mut rep = Report::new();

    rep.record("family.normalization", (!fam.normalized()).then(|| "P(0) != 1".to_string()));
    let deg = (0..=n_max).find(|&n| fam.polys()[n].degree() != Some((ell + n) as i64));
    let deg = if fam.xi().degree() != Some(ell as i64) { Some("Ξ_D".to_string()) } else { deg.map(|n| format!("n={n}")) };
    rep.record("family.degree", deg);

    let mut lead = None;
    if fam.xi().lead() != Some(&lead_xi(lam, set)) {
        lead = Some("Ξ_D".to_string());
    }
    if lead.is_none() {
        lead = (0..=n_max)
            .find(|&n| fam.polys()[n].lead() != Some(&lead_p(lam, set, n)))
            .map(|n| format!("n={n}"));
    }
    rep.record("family.leading_coefficient", lead);
    rep.record_result("family.polynomiality", fam.certify(2 * (ell + n_max) + 3));

    let xi_up = xi_d(set, &lam.shift(1))?;
    rep.record("family.shape_invariance", (fam.polys()[0] != xi_up).then(|| "P_(D,0) != Ξ_D(λ+δ)".to_string()));

    let def = deformed(set, lam)?;
    let samples: Vec<Vec<Rational>> =
        (0..=n_max).map(|n| (0..=big_n as i64).map(|x| fam.p_check(n, x)).collect()).collect();
    let mut eig = None;
    for (n, s) in samples.iter().enumerate() {
        let hv = def.h.mul_vec(s);
        let e = lam.energy(n as i64);
        if let Some(x) = (0..=big_n).find(|&x| hv[x] != &e * &s[x]) {
            eig = Some(format!("n={n}, x={x}"));
            break;
        }
    }
    rep.record("family.eigen_equation", eig);

    let w: Vec<Rational> = def.psi_sq.values.iter().map(|p| p / fam.xi_check(1)).collect();
    let mut orth = None;
    'outer: for i in 0..=n_max {
        for j in i..=n_max {
            let s: Rational = (0..=big_n).map(|x| &w[x] * &samples[i][x] * &samples[j][x]).sum();
            let expect = if i == j { Rational::one() / &def.d_dn_sq[i] } else { Rational::zero() };
            if s != expect {
                orth = Some(format!("(n,m)=({i},{j})"));
                break 'outer;
            }
        }
    }
    rep.record("family.orthogonality", orth);
    Ok(rep)
}

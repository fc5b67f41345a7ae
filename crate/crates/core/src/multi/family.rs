use num_traits::{One, Zero};

use super::consts::{c_d, c_dn};
use super::IndexSet;
use crate::base::ParameterSet;
use crate::error::{Error, Result};
use crate::exact::Newton;
use crate::{Matrix, Poly, Rational};

/// `det(f_k(x + j − 1))_{1≤j,k≤n}`; `1` for no functions.
pub fn casoratian<F>(fs: &[F], x: &Rational) -> Result<Rational>
where
    F: Fn(&Rational) -> Result<Rational>,
{
    let n = fs.len();
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let xj = x + Rational::from_integer(j.into());
        rows.push(fs.iter().map(|f| f(&xj)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Matrix::from_rows(rows).det())
}

/// Grid evaluation of the determinant expressions for one `(λ, D)`.
pub(crate) struct Dets {
    lam: ParameterSet,
    set: IndexSet,
    xis: Vec<Poly>,
    base: Vec<Poly>,
    c_d: Rational,
}

impl Dets {
    pub(crate) fn new(lam: &ParameterSet, set: &IndexSet, n_max: usize) -> Result<Self> {
        let xis = set.as_slice().iter().map(|&v| lam.xi_v(v)).collect::<Result<Vec<_>>>()?;
        let base = lam.racah_polys(n_max)?;
        Ok(Dets { lam: lam.clone(), set: set.clone(), xis, base, c_d: c_d(lam, set)? })
    }

    fn xi_check(&self, k: usize, x: i64) -> Rational {
        self.xis[k].eval(&self.lam.eta_at(x, 0))
    }

    /// `Ξ̌_D(x; λ)` from the `M × M` determinant.
    pub(crate) fn xi_at(&self, x: i64) -> Result<Rational> {
        let m = self.set.m();
        let mat = Matrix::from_fn(m, m, |j, k| self.xi_check(k, x + j as i64));
        Ok(mat.det() / (&self.c_d * self.lam.phi_m(x, m)?))
    }

    /// `P̌_{D,n}(x; λ)` from the `(M+1) × (M+1)` determinant; `c_dn` is
    /// `C_{D,n}`.
    pub(crate) fn p_at(&self, n: usize, c_dn: &Rational, x: i64) -> Result<Rational> {
        let m = self.set.m();
        let pn = &self.base[n];
        let mut last = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let xj = x + j as i64;
            last.push(self.lam.r_j(j + 1, x, m)? * pn.eval(&self.lam.eta_at(xj, 0)));
        }
        let mat = Matrix::from_fn(m + 1, m + 1, |j, k| {
            if k < m {
                self.xi_check(k, x + j as i64)
            } else {
                last[j].clone()
            }
        });
        Ok(mat.det() / (c_dn * self.lam.phi_m(x, m + 1)?))
    }
}

/// Interpolates `f(x)` at `x = 0..=deg` against abscissae `η(x; λ+shift·δ)`.
pub(crate) fn interpolate_grid(
    lam: &ParameterSet,
    shift: i64,
    deg: usize,
    mut f: impl FnMut(i64) -> Result<Rational>,
) -> Result<Poly> {
    let mut nw = Newton::new();
    for x in 0..=deg as i64 {
        let e = lam.eta_at(x, shift);
        let y = f(x)?;
        nw.push(e, y).map_err(|err| match err {
            Error::DuplicateNode => Error::DegenerateGrid(format!("η({x}; λ+{shift}δ) repeats an earlier abscissa")),
            other => other,
        })?;
    }
    Ok(nw.to_poly())
}

fn check_degree(p: &Poly, deg: usize, what: &str) -> Result<()> {
    if p.degree() != Some(deg as i64) {
        return Err(Error::AssumptionViolated(format!(
            "{what} has degree {:?}, expected {deg} (leading coefficient vanishes)",
            p.degree()
        )));
    }
    Ok(())
}

/// `Ξ_D(η; λ)` as a polynomial in `η(x; λ+(M−1)δ)`.
pub fn xi_d(set: &IndexSet, lam: &ParameterSet) -> Result<Poly> {
    if set.is_empty() {
        return Ok(Poly::one());
    }
    let dets = Dets::new(lam, set, 0)?;
    xi_from(&dets)
}

fn xi_from(dets: &Dets) -> Result<Poly> {
    let m = dets.set.m() as i64;
    let ell = dets.set.ell();
    let p = interpolate_grid(&dets.lam, m - 1, ell, |x| dets.xi_at(x))?;
    check_degree(&p, ell, "Ξ_D")?;
    Ok(p)
}

fn p_from(dets: &Dets, n: usize) -> Result<Poly> {
    let m = dets.set.m() as i64;
    let deg = dets.set.ell() + n;
    let cdn = c_dn(&dets.lam, &dets.set, n)?;
    let p = interpolate_grid(&dets.lam, m, deg, |x| dets.p_at(n, &cdn, x))?;
    check_degree(&p, deg, "P_(D,n)")?;
    Ok(p)
}

/// `P_{D,n}(η; λ)` as a polynomial in `η(x; λ+Mδ)`.
pub fn p_dn(set: &IndexSet, n: usize, lam: &ParameterSet) -> Result<Poly> {
    check_n(lam, n)?;
    let dets = Dets::new(lam, set, n)?;
    p_from(&dets, n)
}

fn check_n(lam: &ParameterSet, n: usize) -> Result<()> {
    match lam.size() {
        Some(big_n) if n > big_n as usize => Err(Error::InsufficientBasis { m: n as i64 }),
        _ => Ok(()),
    }
}

/// `Ξ_D` together with `P_{D,0..=n_max}` for one `(λ, D)`.
#[derive(Clone, Debug)]
pub struct MultiIndexedFamily {
    lam: ParameterSet,
    set: IndexSet,
    xi: Poly,
    polys: Vec<Poly>,
}

impl MultiIndexedFamily {
    /// Builds every member by determinant evaluation and interpolation.
    pub fn build(lam: &ParameterSet, set: &IndexSet, n_max: usize) -> Result<Self> {
        check_n(lam, n_max)?;
        let dets = Dets::new(lam, set, n_max)?;
        let xi = if set.is_empty() { Poly::one() } else { xi_from(&dets)? };
        let polys = (0..=n_max).map(|n| p_from(&dets, n)).collect::<Result<Vec<_>>>()?;
        Ok(MultiIndexedFamily { lam: lam.clone(), set: set.clone(), xi, polys })
    }

    /// Assembles a family from polynomials computed elsewhere.
    pub fn from_parts(lam: &ParameterSet, set: &IndexSet, xi: Poly, polys: Vec<Poly>) -> Self {
        MultiIndexedFamily { lam: lam.clone(), set: set.clone(), xi, polys }
    }

    pub fn lambda(&self) -> &ParameterSet {
        &self.lam
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.set
    }

    pub fn m(&self) -> usize {
        self.set.m()
    }

    pub fn ell(&self) -> usize {
        self.set.ell()
    }

    /// `Ξ_D(η; λ)`.
    pub fn xi(&self) -> &Poly {
        &self.xi
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    /// `P_{D,n}`; zero for negative `n`.
    pub fn p(&self, n: i64) -> Result<Poly> {
        if n < 0 {
            return Ok(Poly::zero());
        }
        self.polys.get(n as usize).cloned().ok_or(Error::InsufficientBasis { m: n })
    }

    /// `Ξ̌_D(x; λ)`.
    pub fn xi_check(&self, x: i64) -> Rational {
        self.xi.eval(&self.lam.eta_at(x, self.m() as i64 - 1))
    }

    /// `P̌_{D,n}(x; λ)`.
    pub fn p_check(&self, n: usize, x: i64) -> Rational {
        self.polys[n].eval(&self.lam.eta_at(x, self.m() as i64))
    }

    /// Evaluates any polynomial in the `P_{D,n}` variable on the grid.
    pub fn eval_check(&self, p: &Poly, x: i64) -> Rational {
        p.eval(&self.lam.eta_at(x, self.m() as i64))
    }

    /// Re-evaluates the determinant expressions at `extra` grid points past
    /// the interpolation nodes and compares with the stored polynomials.
    pub fn certify(&self, extra: usize) -> Result<()> {
        let dets = Dets::new(&self.lam, &self.set, self.n_max())?;
        let m = self.m() as i64;
        let ell = self.ell();
        if !self.set.is_empty() {
            for x in (ell + 1)..=(ell + extra) {
                let x = x as i64;
                if dets.xi_at(x)? != self.xi_check(x) {
                    return Err(Error::failure("Ξ_D polynomiality", format!("x={x}")));
                }
            }
        }
        for n in 0..=self.n_max() {
            let cdn = c_dn(&self.lam, &self.set, n)?;
            for x in (ell + n + 1)..=(ell + n + extra) {
                let x = x as i64;
                if dets.p_at(n, &cdn, x)? != self.polys[n].eval(&self.lam.eta_at(x, m)) {
                    return Err(Error::failure("P_(D,n) polynomiality", format!("n={n}, x={x}")));
                }
            }
        }
        Ok(())
    }

    /// True when `Ξ_D(0) = 1` and `P_{D,n}(0) = 1`.
    pub fn normalized(&self) -> bool {
        let zero = Rational::zero();
        self.xi.eval(&zero).is_one() && self.polys.iter().all(|p| p.eval(&zero).is_one())
    }
}

//! Closure relations of order `K = 2L`, the spectral functions `α_j(z)`, the
//! polynomials `R_i(z)` and the creation/annihilation operators built from
//! them.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::base::{Family, ParameterSet};
use crate::error::{Error, Result};
use crate::exact::interpolate;
use crate::multi::{deformed, MultiIndexedFamily};
use crate::recconst::ConstCoeffs;
use crate::report::Report;
use crate::{Matrix, Poly, Rational};

/// Sum and product of `α_j(z)` and `α_{2L+1−j}(z)` as polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPair {
    pub j: usize,
    pub sum_poly: Poly,
    pub prod_poly: Poly,
}

impl AlphaPair {
    /// `L + 1 − j`, the level shift carried by this pair.
    pub fn step(&self, l: usize) -> usize {
        l + 1 - self.j
    }
}

/// `α_j(E_n)` in square-root free form: `E_{n+L+1−j} − E_n` for `j ≤ L`,
/// `E_{n−(j−L)} − E_n` otherwise.
pub fn alpha_at(j: usize, l: usize, lam: &ParameterSet, n: i64) -> Rational {
    let shift = if j <= l { (l + 1 - j) as i64 } else { -((j - l) as i64) };
    lam.energy(n + shift) - lam.energy(n)
}

/// The `L` pairs, checked against the roots `α_j(E_n)`, `α_{2L+1−j}(E_n)` of
/// `t² − sum·t + prod` for `n = 0..=6`.
pub fn alpha_pairs(l: usize, lam: &ParameterSet) -> Result<Vec<AlphaPair>> {
    if l == 0 {
        return Err(Error::InvalidInput("L must be at least 1".into()));
    }
    let one = Rational::one();
    let dt = lam.d_tilde();
    let mut out = Vec::with_capacity(l);
    for j in 1..=l {
        let m = (l + 1 - j) as i64;
        let (sum_poly, prod_poly) = match lam.family() {
            Family::R => {
                let m2 = Rational::from_integer((m * m).into());
                let sum = Poly::constant(&m2 * Rational::from_integer(2.into()));
                let prod = Poly::new(vec![&m2 * (&m2 - &dt * &dt), -(&m2 * Rational::from_integer(4.into()))]);
                (sum, prod)
            }
            Family::QR => {
                let two = Rational::from_integer(2.into());
                let s = lam.qpow(-m) - &two + lam.qpow(m);
                let c = lam.qpow(-m) + &two + lam.qpow(m);
                let w = Poly::linear(&one + &dt);
                let sum = w.scale(&s);
                let prod = (&Poly::constant(&c * &dt) - &(&w * &w)).scale(&s);
                (sum, prod)
            }
        };
        out.push(AlphaPair { j, sum_poly, prod_poly });
    }
    for p in &out {
        for n in 0..=6i64 {
            let z = lam.energy(n);
            let s = p.sum_poly.eval(&z);
            let pr = p.prod_poly.eval(&z);
            for root in [alpha_at(p.j, l, lam, n), alpha_at(2 * l + 1 - p.j, l, lam, n)] {
                if &root * &root - &s * &root + &pr != Rational::zero() {
                    return Err(Error::failure("closure.alpha_roots", format!("j={}, n={n}", p.j)));
                }
            }
        }
    }
    Ok(out)
}

/// Whether the ordering of the `α_j` is guaranteed: `d̃ > 2L−1` (R),
/// `d̃ < q^{2L−1}` (qR).
pub fn alpha_order_applies(l: usize, lam: &ParameterSet) -> bool {
    let e = 2 * l as i64 - 1;
    match lam.family() {
        Family::R => lam.d_tilde() > Rational::from_integer(e.into()),
        Family::QR => lam.d_tilde() < lam.qpow(e),
    }
}

/// Strict ordering `α_1 > … > α_L > 0 > α_{L+1} > … > α_{2L}` at
/// `z = E_0..=E_{n_max}`.
pub fn alpha_order_check(l: usize, lam: &ParameterSet, n_max: usize) -> Report {
    let mut rep = Report::new();
    let mut bad = None;
    for n in 0..=n_max as i64 {
        let vals: Vec<Rational> = (1..=2 * l).map(|j| alpha_at(j, l, lam, n)).collect();
        let sorted = vals.windows(2).all(|w| w[0] > w[1]);
        let split = vals[l - 1] > Rational::zero() && vals[l] < Rational::zero();
        if !(sorted && split) {
            bad = Some(format!("z=E_{n}"));
            break;
        }
    }
    rep.record("closure.alpha_order", bad);
    rep
}

/// `R_0..R_{K−1}` and `R_{−1}` of the closure relation of order `K = 2L`.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureData {
    pub k: usize,
    #[serde(skip)]
    pub r: Vec<Poly>,
    #[serde(skip)]
    pub r_minus1: Poly,
}

/// `Π_j (t² − sum_j t + prod_j) = t^K − Σ R_i t^i`, coefficients in `z`.
fn r_polys(pairs: &[AlphaPair]) -> Vec<Poly> {
    let mut acc = vec![Poly::one()];
    for p in pairs {
        let factor = [p.prod_poly.clone(), -&p.sum_poly, Poly::one()];
        let mut next = vec![Poly::zero(); acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            for (j, f) in factor.iter().enumerate() {
                next[i + j] = &next[i + j] + &(a * f);
            }
        }
        acc = next;
    }
    acc.pop();
    acc.into_iter().map(|c| -c).collect()
}

/// `R_i` from the α pairs and `R_{−1}` interpolated through
/// `(E_n, −r_{n,0} R_0(E_n))` at `2L+1` rows; the remaining rows are
/// holdouts.
pub fn build_closure(lam: &ParameterSet, c: &ConstCoeffs) -> Result<ClosureData> {
    let pairs = alpha_pairs(c.l, lam)?;
    let r = r_polys(&pairs);
    let nodes = 2 * c.l + 1;
    let ns: Vec<usize> = c.rows.keys().copied().collect();
    if ns.len() < nodes + 1 {
        return Err(Error::InvalidInput(format!("need at least {} rows, have {}", nodes + 1, ns.len())));
    }
    let value = |n: usize| {
        let z = lam.energy(n as i64);
        -(c.r(n, 0) * r[0].eval(&z))
    };
    let pts: Vec<(Rational, Rational)> = ns[..nodes].iter().map(|&n| (lam.energy(n as i64), value(n))).collect();
    let r_minus1 = interpolate(&pts).map_err(|_| Error::DegenerateSpectrum("repeated energies among the nodes".into()))?;
    for &n in &ns[nodes..] {
        if r_minus1.eval(&lam.energy(n as i64)) != value(n) {
            return Err(Error::ConjectureCounterexample(format!(
                "R_-1 through n={:?} misses n={n}; λ = {lam}, D = {}",
                &ns[..nodes],
                c.set
            )));
        }
    }
    Ok(ClosureData { k: 2 * c.l, r, r_minus1 })
}

/// Eigenbasis of `H̃_D` on the grid: columns `P̌_{D,n}`, eigenvalues `E_n`.
struct Spectral {
    v: Matrix,
    v_inv: Matrix,
    energies: Vec<Rational>,
}

impl Spectral {
    fn new(fam: &MultiIndexedFamily) -> Result<Self> {
        let lam = fam.lambda();
        let size = lam.size().ok_or_else(|| Error::InvalidParameters("closure needs a finite N".into()))? as usize;
        if fam.n_max() < size {
            return Err(Error::InsufficientBasis { m: size as i64 });
        }
        let v = Matrix::from_fn(size + 1, size + 1, |x, n| fam.p_check(n, x as i64));
        let v_inv = v.inverse()?;
        let energies = (0..=size as i64).map(|n| lam.energy(n)).collect();
        Ok(Spectral { v, v_inv, energies })
    }

    /// `f(H̃_D)` for a function known on the spectrum.
    fn apply(&self, f: impl Fn(usize, &Rational) -> Rational) -> Matrix {
        let size = self.energies.len();
        let diag: Vec<Rational> = self.energies.iter().enumerate().map(|(n, e)| f(n, e)).collect();
        let scaled = Matrix::from_fn(size, size, |x, n| &self.v[(x, n)] * &diag[n]);
        &scaled * &self.v_inv
    }
}

fn x_diag(fam: &MultiIndexedFamily, x: &Poly) -> Matrix {
    let size = fam.lambda().size().expect("finite") as usize + 1;
    let vals: Vec<Rational> = (0..size as i64).map(|g| fam.eval_check(x, g)).collect();
    Matrix::diagonal(&vals)
}

/// `(ad H)^i X` for `i = 0..=k`.
fn ad_powers(h: &Matrix, x: &Matrix, k: usize) -> Vec<Matrix> {
    let mut out = vec![x.clone()];
    for _ in 0..k {
        let next = h.commutator(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// The matrix identity `(ad H̃_D)^K X = Σ_i (ad H̃_D)^i X · R_i(H̃_D) + R_{−1}(H̃_D)`
/// on the grid, with `X` the diagonal matrix of `X̌(x)`.
pub fn verify_closure(fam: &MultiIndexedFamily, c: &ConstCoeffs, cd: &ClosureData) -> Result<Report> {
    let h = deformed(fam.index_set(), fam.lambda())?.h;
    let spec = Spectral::new(fam)?;
    let xd = x_diag(fam, &c.x);
    let ads = ad_powers(&h, &xd, cd.k);
    let mut rhs = spec.apply(|_, e| cd.r_minus1.eval(e));
    for (i, ri) in cd.r.iter().enumerate() {
        let rh = spec.apply(|_, e| ri.eval(e));
        rhs = &rhs + &(&ads[i] * &rh);
    }
    let lhs = &ads[cd.k];
    let mut rep = Report::new();
    let mut bad = None;
    'outer: for x in 0..lhs.rows() {
        for y in 0..lhs.cols() {
            if lhs[(x, y)] != rhs[(x, y)] {
                bad = Some(format!("({x},{y})"));
                break 'outer;
            }
        }
    }
    rep.record(format!("closure.identity_K{}", cd.k), bad);
    Ok(rep)
}

/// Columns `ã^{(j)} P̌_{D,n}`, `n = 0..=N`.
fn ladder_columns(j: usize, cd: &ClosureData, fam: &MultiIndexedFamily, c: &ConstCoeffs) -> Result<Vec<Vec<Rational>>> {
    let lam = fam.lambda();
    let k_ord = cd.k;
    let l = k_ord / 2;
    if j == 0 || j > k_ord {
        return Err(Error::InvalidInput(format!("ladder index j={j} outside 1..={k_ord}")));
    }
    let h = deformed(fam.index_set(), lam)?.h;
    let spec = Spectral::new(fam)?;
    let ads = ad_powers(&h, &x_diag(fam, &c.x), k_ord - 1);
    let size = spec.energies.len();
    let mut cols = Vec::with_capacity(size);
    for n in 0..size {
        let e = &spec.energies[n];
        let aj = alpha_at(j, l, lam, n as i64);
        let mut denom = Rational::one();
        for k in 1..=k_ord {
            if k != j {
                denom *= &aj - alpha_at(k, l, lam, n as i64);
            }
        }
        if denom.is_zero() || aj.is_zero() {
            return Err(Error::DegenerateSpectrum(format!("α values coincide or vanish at n={n}")));
        }
        let rs: Vec<Rational> = cd.r.iter().map(|p| p.eval(e)).collect();
        let pn = spec.v.column(n);
        let mut acc: Vec<Rational> = pn.iter().map(|v| v * cd.r_minus1.eval(e) / &aj).collect();
        for i in 1..=k_ord {
            // p_ij(E_n) = α^{K−i} − Σ_{k=1}^{K−i} R_{K−k} α^{K−i−k}
            let top = k_ord - i;
            let mut pij = crate::exact::powi(&aj, top as i64);
            for k in 1..=top {
                pij -= &rs[k_ord - k] * crate::exact::powi(&aj, (top - k) as i64);
            }
            if pij.is_zero() {
                continue;
            }
            let w = ads[i - 1].mul_vec(&pn);
            for (a, b) in acc.iter_mut().zip(w) {
                *a += b * &pij;
            }
        }
        cols.push(acc.into_iter().map(|v| v / &denom).collect());
    }
    Ok(cols)
}

/// `ã^{(j)} = a^{(j)}(H̃_D, X)` as a matrix, assembled in the eigenbasis.
pub fn ladder(j: usize, cd: &ClosureData, fam: &MultiIndexedFamily, c: &ConstCoeffs) -> Result<Matrix> {
    let cols = ladder_columns(j, cd, fam, c)?;
    let spec = Spectral::new(fam)?;
    Ok(&Matrix::from_columns(&cols) * &spec.v_inv)
}

/// `ã^{(j)} P̌_{D,n} = r_{n,±m} P̌_{D,n±m}` for every `j` and `n`, and the
/// resummation `Σ_j ã^{(j)} P̌_{D,n} + r_{n,0} P̌_{D,n} = X̌ P̌_{D,n}`.
pub fn verify_ladders(fam: &MultiIndexedFamily, c: &ConstCoeffs, cd: &ClosureData) -> Result<Report> {
    let size = fam.lambda().size().ok_or_else(|| Error::InvalidParameters("ladders need a finite N".into()))? as usize;
    let l = cd.k / 2;
    let mut total: Vec<Vec<Rational>> =
        (0..=size).map(|n| (0..=size as i64).map(|x| c.r(n, 0) * fam.p_check(n, x)).collect()).collect();
    let mut act = None;
    for j in 1..=cd.k {
        let cols = ladder_columns(j, cd, fam, c)?;
        let shift = if j <= l { (l + 1 - j) as i64 } else { -((j - l) as i64) };
        for (n, col) in cols.iter().enumerate() {
            let m = n as i64 + shift;
            let r = c.r(n, shift);
            for (x, v) in col.iter().enumerate() {
                let expect = if (0..=size as i64).contains(&m) && !r.is_zero() {
                    &r * fam.p_check(m as usize, x as i64)
                } else {
                    Rational::zero()
                };
                if *v != expect && act.is_none() {
                    act = Some(format!("j={j}, n={n}, x={x}"));
                }
                total[n][x] += v;
            }
        }
    }
    let mut resum = None;
    for (n, col) in total.iter().enumerate() {
        for (x, v) in col.iter().enumerate() {
            let g = x as i64;
            if *v != fam.eval_check(&c.x, g) * fam.p_check(n, g) && resum.is_none() {
                resum = Some(format!("n={n}, x={x}"));
            }
        }
    }
    let mut rep = Report::new();
    rep.record("closure.ladder_action", act);
    rep.record("closure.resummation", resum);
    Ok(rep)
}

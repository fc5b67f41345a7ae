//! Constant-coefficient recurrences `X(η)P_{D,n}(η) = Σ_{|k|≤L} r_{n,k} P_{D,n+k}(η)`
//! with `X = I_{λ+Mδ}[Ξ_D Y]`: the `g′` coefficients, the primitive map
//! `I_λ`, coefficient extraction, the relations among the `r_{n,k}` and the
//! polynomiality criterion for `H̃_D`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::base::{Family, ParameterSet};
use crate::closure::alpha_pairs;
use crate::error::{Error, Result};
use crate::exact::{interpolate, powi, reconstruct_rational, Thiele};
use crate::multi::{d_tilde_dn_sq, lead_p, xi_d, IndexSet, MultiIndexedFamily};
use crate::rational::{binomial, factorial, frac, int, sqrt_exact};
use crate::recvar::generate;
use crate::report::Report;
use crate::{Matrix, Poly, Rational};

/// Which sinusoidal coordinate a `g′` table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GFamily {
    R,
    #[serde(rename = "qR")]
    QR,
    W,
    AW,
}

fn bin(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// `g′^{(k)W}_n = (−1)^k 2^{−2k−1} C(2n+2, 2k+1)`.
pub fn gprime_w(n: usize, k: usize) -> Rational {
    let v = bin(2 * n as i64 + 2, 2 * k as i64 + 1) / powi(&int(2), 2 * k as i64 + 1);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `g′^{(k)AW}_n`; needs `q^{1/2}` when `n` is odd and `k` even.
pub fn gprime_aw(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    if k % 2 == 1 || k > n {
        return Ok(Rational::zero());
    }
    let half = if (n - k) % 2 == 1 {
        Some(sqrt_exact(q).ok_or_else(|| Error::IrrationalShift(format!("q^(1/2) for q = {q}")))?)
    } else {
        None
    };
    let (n, k) = (n as i64, k as i64);
    let one = Rational::one();
    let mut acc = Rational::zero();
    for r in 0..=k / 2 {
        let e = n - k + 2 * r;
        let mut qpow = powi(q, -(e / 2));
        if let Some(h) = &half {
            qpow /= h;
        }
        let mut t = bin(n - k + r, r) * qpow / (fact(k / 2 - r) * fact(n - k / 2 + 1 + r));
        t *= (&one - powi(q, n - k + 1 + 2 * r)) / (&one - q);
        if r % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    Ok(acc * fact(n + 1) / powi(&int(2), k))
}

/// `g′^{(k)}_n(λ)` for R or qR (depends on `d` and `q` only). The qR double
/// sum is evaluated with the half powers of `q` and `d` already combined,
/// so no square roots are needed.
pub fn gprime(n: usize, k: usize, lam: &ParameterSet) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let (ni, ki) = (n as i64, k as i64);
    let d = lam.d();
    let one = Rational::one();
    let mut acc = Rational::zero();
    match lam.family() {
        Family::R => {
            let a = powi(&(d / int(2)), 2);
            let b = powi(&((d - &one) / int(2)), 2);
            for r in 0..=ki {
                for l in 0..=ki - r {
                    let mut t = bin(ni + 1, r) * bin(ni - r - l, ni - ki) * powi(&a, r) * powi(&b, ki - r - l);
                    t *= gprime_w((ni - r) as usize, l as usize);
                    if (r + l) % 2 == 1 {
                        acc -= t;
                    } else {
                        acc += t;
                    }
                }
            }
        }
        Family::QR => {
            let q = lam.q();
            let dp = &one + d;
            let dm = &one + d / q;
            for r in 0..=ki {
                let np = ni - r;
                for l in (0..=ki - r).step_by(2) {
                    let mut inner = Rational::zero();
                    for s in 0..=l / 2 {
                        let mut t = bin(np - l + s, s) * powi(q, -s) / (fact(l / 2 - s) * fact(np - l / 2 + 1 + s));
                        t *= (&one - powi(q, np - l + 1 + 2 * s)) / (&one - q);
                        if s % 2 == 1 {
                            inner -= t;
                        } else {
                            inner += t;
                        }
                    }
                    let mut t = bin(ni + 1, r) * bin(ni - r - l, ni - ki) * powi(d, l / 2);
                    t *= powi(&dp, r) * powi(&dm, ki - r - l) * fact(np + 1) * inner;
                    if r % 2 == 1 {
                        acc -= t;
                    } else {
                        acc += t;
                    }
                }
            }
        }
    }
    acc
}

/// `g′^{(k)}_n` for `0 ≤ k ≤ n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct GPrimeTable {
    family: GFamily,
    entries: Vec<Vec<Rational>>,
}

impl GPrimeTable {
    pub fn new(lam: &ParameterSet, n_max: usize) -> Self {
        let entries = (0..=n_max).map(|n| (0..=n).map(|k| gprime(n, k, lam)).collect()).collect();
        let family = if lam.is_q() { GFamily::QR } else { GFamily::R };
        GPrimeTable { family, entries }
    }

    pub fn wilson(n_max: usize) -> Self {
        let entries = (0..=n_max).map(|n| (0..=n).map(|k| gprime_w(n, k)).collect()).collect();
        GPrimeTable { family: GFamily::W, entries }
    }

    pub fn askey_wilson(n_max: usize, q: &Rational) -> Result<Self> {
        let entries = (0..=n_max)
            .map(|n| (0..=n).map(|k| gprime_aw(n, k, q)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(GPrimeTable { family: GFamily::AW, entries })
    }

    pub fn family(&self) -> GFamily {
        self.family
    }

    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.entries.get(n).and_then(|row| row.get(k)).cloned().unwrap_or_else(Rational::zero)
    }
}

/// The primitive polynomial `I_λ[p]`: `P(0) = 0` and
/// `(P(η(x)) − P(η(x−1)))/(η(x) − η(x−1)) = p(η(x; λ−δ))`.
pub fn imap(p: &Poly, lam: &ParameterSet) -> Result<Poly> {
    let Some(n) = p.degree() else {
        return Ok(Poly::zero());
    };
    let n = n as usize;
    let g = GPrimeTable::new(lam, n);
    let mut b = vec![Rational::zero(); n + 2];
    for k in (0..=n).rev() {
        let mut v = p.coeff(k as i64);
        for j in k + 1..=n {
            v -= g.get(j, j - k) * &b[j + 1];
        }
        let g0 = g.get(k, 0);
        if g0.is_zero() {
            return Err(Error::MapUndefined { k });
        }
        b[k + 1] = v / g0;
    }
    Ok(Poly::new(b))
}

/// `X = I_{λ+Mδ}[Ξ_D Y]`, a polynomial in `η(x; λ+Mδ)` of degree
/// `ℓ_D + deg Y + 1`.
pub fn xpoly(set: &IndexSet, y: &Poly, lam: &ParameterSet) -> Result<Poly> {
    if y.is_zero() {
        return Err(Error::InvalidInput("Y must be nonzero".into()));
    }
    let xi = xi_d(set, lam)?;
    imap(&(&xi * y), &lam.shift(set.m() as i64))
}

/// One row `k -> r_{n,k}`, `|k| ≤ L`, zeros included.
pub type Row = BTreeMap<i64, Rational>;

fn zero_row(l: usize) -> Row {
    (-(l as i64)..=l as i64).map(|k| (k, Rational::zero())).collect()
}

/// Extracted coefficients for one `(D, X)`.
#[derive(Clone, Debug)]
pub struct ConstCoeffs {
    pub set: IndexSet,
    pub x: Poly,
    pub l: usize,
    pub rows: BTreeMap<usize, Row>,
}

impl ConstCoeffs {
    /// `r_{n,k}`; zero outside the table.
    pub fn r(&self, n: usize, k: i64) -> Rational {
        self.rows.get(&n).and_then(|row| row.get(&k)).cloned().unwrap_or_else(Rational::zero)
    }
}

fn degree_of(x: &Poly) -> Result<usize> {
    match x.degree() {
        Some(d) if d > 0 => Ok(d as usize),
        _ => Err(Error::InvalidInput("X must have positive degree".into())),
    }
}

/// Expansion of grid vectors in the basis `P̌_{D,0..=N}`.
struct GridBasis {
    inv: Matrix,
}

impl GridBasis {
    fn new(fam: &MultiIndexedFamily) -> Result<Self> {
        let n = fam.lambda().size().expect("finite family") as usize;
        if fam.n_max() < n {
            return Err(Error::InsufficientBasis { m: n as i64 });
        }
        let v = Matrix::from_fn(n + 1, n + 1, |x, m| fam.p_check(m, x as i64));
        Ok(GridBasis { inv: v.inverse()? })
    }

    fn row(&self, fam: &MultiIndexedFamily, x: &Poly, l: usize, n: usize) -> Result<Row> {
        let size = self.inv.rows();
        let v: Vec<Rational> =
            (0..size as i64).map(|g| fam.eval_check(x, g) * fam.p_check(n, g)).collect();
        let coeffs = self.inv.mul_vec(&v);
        let mut row = zero_row(l);
        for (m, c) in coeffs.into_iter().enumerate() {
            let k = m as i64 - n as i64;
            if c.is_zero() {
                continue;
            }
            if k.unsigned_abs() as usize > l {
                return Err(Error::TheoremViolation(format!("n={n}: grid expansion has a term at k={k}, beyond L={l}")));
            }
            row.insert(k, c);
        }
        Ok(row)
    }
}

fn eliminate(fam: &MultiIndexedFamily, x: &Poly, l: usize, n: usize) -> Result<Row> {
    let ell = fam.ell() as i64;
    let mut f = x * &fam.p(n as i64)?;
    let mut row = zero_row(l);
    while let Some(d) = f.degree() {
        if d < ell {
            return Err(Error::TheoremViolation(format!("n={n}: nonzero remainder of degree {d} < ℓ_D = {ell}")));
        }
        let m = d - ell;
        let k = m - n as i64;
        if k.unsigned_abs() as usize > l {
            return Err(Error::TheoremViolation(format!("n={n}: term P_(D,{m}) with k={k} beyond L={l}")));
        }
        let basis = fam.p(m)?;
        let c = f.lead().expect("nonzero") / basis.lead().expect("nonzero basis");
        f = &f - &basis.scale(&c);
        row.insert(k, c);
    }
    Ok(row)
}

/// `r_{n,k}` for one `n`: leading-term elimination in the indeterminate case,
/// expansion over the grid basis `P̌_{D,0..=N}` in the finite case.
pub fn extract_rnk(fam: &MultiIndexedFamily, x: &Poly, n: usize) -> Result<Row> {
    let l = degree_of(x)?;
    if fam.lambda().is_finite() {
        GridBasis::new(fam)?.row(fam, x, l, n)
    } else {
        eliminate(fam, x, l, n)
    }
}

/// Rows `n ∈ ns` for one `(D, X)`.
pub fn extract_table(fam: &MultiIndexedFamily, x: &Poly, ns: impl IntoIterator<Item = usize>) -> Result<ConstCoeffs> {
    let l = degree_of(x)?;
    let grid = if fam.lambda().is_finite() { Some(GridBasis::new(fam)?) } else { None };
    let mut rows = BTreeMap::new();
    for n in ns {
        let row = match &grid {
            Some(g) => g.row(fam, x, l, n)?,
            None => eliminate(fam, x, l, n)?,
        };
        rows.insert(n, row);
    }
    Ok(ConstCoeffs { set: fam.index_set().clone(), x: x.clone(), l, rows })
}

/// Re-checks every row: `X P_{D,n} − Σ r_{n,k} P_{D,n+k}` is the zero
/// polynomial (indeterminate) or vanishes at every grid point (finite).
pub fn check_expansion(fam: &MultiIndexedFamily, c: &ConstCoeffs) -> Result<Report> {
    let mut rep = Report::new();
    let mut bad = None;
    for (&n, row) in &c.rows {
        if let Some(size) = fam.lambda().size() {
            for g in 0..=size as i64 {
                let mut v = fam.eval_check(&c.x, g) * fam.p_check(n, g);
                for (&k, r) in row {
                    let m = n as i64 + k;
                    if m >= 0 && m <= size as i64 && !r.is_zero() {
                        v -= r * fam.p_check(m as usize, g);
                    }
                }
                if !v.is_zero() && bad.is_none() {
                    bad = Some(format!("n={n}, x={g}"));
                }
            }
        } else {
            let mut f = &c.x * &fam.p(n as i64)?;
            for (&k, r) in row {
                if !r.is_zero() {
                    f = &f - &fam.p(n as i64 + k)?.scale(r);
                }
            }
            if !f.is_zero() && bad.is_none() {
                bad = Some(format!("n={n}"));
            }
        }
    }
    rep.record("const.expansion", bad);
    Ok(rep)
}

/// Sum rule, top coefficient and (finite case) norm-ratio relation on every
/// extracted row, plus the zero pattern of `r_{n,−k}` for `n < k`. With a
/// continuation in `a`, also the vanishing tail and the Pochhammer factors
/// of `r_{n,k}`, `k ≥ 1`.
pub fn verify_coeff_relations(
    fam: &MultiIndexedFamily,
    c: &ConstCoeffs,
    cont: Option<&AContinuation>,
) -> Result<Report> {
    let lam = fam.lambda();
    let set = &c.set;
    let l = c.l as i64;
    let size = lam.size().map(|s| s as usize);
    let mut rep = Report::new();

    let mut sum = None;
    let mut lower = None;
    for (&n, row) in &c.rows {
        let mut s = Rational::zero();
        for k in 1..=l {
            s += &row[&k] + &row[&-k];
            if (n as i64) < k && !row[&-k].is_zero() && lower.is_none() {
                lower = Some(format!("n={n}, k=-{k}"));
            }
        }
        if row[&0] != -s && sum.is_none() {
            sum = Some(format!("n={n}"));
        }
    }
    rep.record("const.sum_rule", sum);
    rep.record("const.lower_zero_pattern", lower);

    let cx = c.x.lead().cloned().unwrap_or_else(Rational::zero);
    let mut top = None;
    for (&n, row) in &c.rows {
        if size.is_some_and(|s| n + c.l > s) {
            continue;
        }
        let expect = &cx * lead_p(lam, set, n) / lead_p(lam, set, n + c.l);
        if row[&l] != expect && top.is_none() {
            top = Some(format!("n={n}: {} vs {}", row[&l], expect));
        }
    }
    rep.record("const.top_coefficient", top);

    if let Some(size) = size {
        let dsq = |n: usize| -> Result<Rational> { Ok(lam.norm_sq(n)? * d_tilde_dn_sq(lam, set, n)?) };
        let mut norm = None;
        for (&n, row) in &c.rows {
            for k in 1..=c.l {
                if n + k > size || !c.rows.contains_key(&(n + k)) {
                    continue;
                }
                let lhs = c.r(n + k, -(k as i64));
                let rhs = dsq(n)? / dsq(n + k)? * &row[&(k as i64)];
                if lhs != rhs && norm.is_none() {
                    norm = Some(format!("n={n}, k={k}"));
                }
            }
        }
        rep.record("const.norm_ratio", norm);
    }

    if let Some(cont) = cont {
        rep.extend(cont.pochhammer_factors()?);
        if let Some(size) = size {
            rep.extend(cont.tail(c, size)?);
        }
    }
    Ok(rep)
}

/// The coefficients `r_{n,k}` as exact rational functions of the parameter
/// `a` (all other parameters fixed), reconstructed from indeterminate-mode
/// extractions at sample values of `a`.
#[derive(Clone, Debug)]
pub struct AContinuation {
    lam: ParameterSet,
    l: usize,
    coeffs: BTreeMap<(usize, i64), (Poly, Poly)>,
    samples: usize,
}

const SAMPLE_CAP: usize = 160;
// consecutive samples a fit must predict before it is accepted
const SPARE: usize = 3;

/// Indeterminate-mode rows at `a = base + t/31`, `t = 1, 2, …` (skipping
/// integers and samples where the construction degenerates), drawn on demand.
struct Samples<'a> {
    set: &'a IndexSet,
    y: &'a Poly,
    lam: &'a ParameterSet,
    n_hi: usize,
    tried: usize,
    t: Vec<Rational>,
    rows: Vec<BTreeMap<usize, Row>>,
}

impl Samples<'_> {
    fn get(&mut self, i: usize) -> Result<Rational> {
        while self.t.len() <= i {
            if self.t.len() >= SAMPLE_CAP || self.tried > 4 * SAMPLE_CAP {
                return Err(Error::DegenerateGrid("sample budget in a exhausted".into()));
            }
            self.tried += 1;
            let t = frac(self.tried as i64, 31);
            if t.is_integer() {
                continue;
            }
            let a = self.lam.a() + &t;
            if let Ok(rows) = sample_rows(self.set, self.y, self.lam, &a, self.n_hi) {
                self.t.push(int(self.tried as i64));
                self.rows.push(rows);
            }
        }
        Ok(self.t[i].clone())
    }

    fn value(&self, i: usize, n: usize, k: i64) -> Rational {
        self.rows[i].get(&n).and_then(|r| r.get(&k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `r_{n,k}` as a function of `t`: a Thiele fraction grown until it
    /// predicts `SPARE` consecutive new samples, checked against all samples
    /// drawn for it. Falls back to the Euclidean reconstruction when the
    /// continued fraction degenerates.
    fn reconstruct(&mut self, n: usize, k: i64) -> Result<(Poly, Poly)> {
        let mut th = Thiele::new();
        let mut run = 0usize;
        let mut i = 0usize;
        let mut used = Vec::new();
        loop {
            let t = self.get(i)?;
            let v = self.value(i, n, k);
            used.push((t.clone(), v.clone()));
            i += 1;
            if th.eval(&t).as_ref() == Some(&v) {
                run += 1;
                if run >= SPARE {
                    if let Some((num, den)) = th.to_rational() {
                        if used.iter().all(|(t, v)| {
                            let d = den.eval(t);
                            !d.is_zero() && num.eval(t) == v * d
                        }) {
                            return Ok((num, den));
                        }
                    }
                    run = 0;
                }
                continue;
            }
            run = 0;
            if th.push(t, v).is_err() {
                return self.fallback(n, k, used.len());
            }
        }
    }

    fn fallback(&mut self, n: usize, k: i64, from: usize) -> Result<(Poly, Poly)> {
        let mut m = from.max(16);
        loop {
            self.get(m - 1)?;
            let pts: Vec<(Rational, Rational)> = (0..m).map(|i| (self.t[i].clone(), self.value(i, n, k))).collect();
            if let Some(f) = reconstruct_rational(&pts, SPARE)? {
                return Ok(f);
            }
            m += m / 2;
        }
    }
}

impl AContinuation {
    /// Reconstructs `r_{n,k}(a)`, `1 ≤ k ≤ L`, for the given rows `n` and
    /// `X = I[Ξ_D Y]`.
    /// The finite tail only involves rows `n > N − L`, see [`Self::tail_rows`].
    pub fn build(set: &IndexSet, y: &Poly, lam: &ParameterSet, rows: &[usize]) -> Result<Self> {
        let l = set.ell() + y.degree().ok_or_else(|| Error::InvalidInput("Y must be nonzero".into()))? as usize + 1;
        let n_hi = *rows.iter().max().ok_or_else(|| Error::InvalidInput("no rows requested".into()))?;
        let base = lam.a().clone();
        let mut samples = Samples { set, y, lam, n_hi, tried: 0, t: Vec::new(), rows: Vec::new() };
        // samples are indexed by t = 31 (a - base) so the nodes are integers
        let to_a = Poly::new(vec![-(&base * int(31)), int(31)]);
        let mut coeffs = BTreeMap::new();
        for &n in rows {
            for k in 1..=l as i64 {
                let (num, den) = samples.reconstruct(n, k)?;
                let (num, den) = (num.compose(&to_a), den.compose(&to_a));
                let inv = Rational::one() / den.lead().expect("nonzero denominator");
                coeffs.insert((n, k), (num.scale(&inv), den.scale(&inv)));
            }
        }
        Ok(AContinuation { lam: lam.clone(), l, coeffs, samples: samples.t.len() })
    }

    /// Rows `max(0, N−L+1) ..= N`, the ones whose tail reaches past `N`.
    pub fn tail_rows(size: usize, l: usize) -> Vec<usize> {
        ((size + 1).saturating_sub(l)..=size).collect()
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// `(numerator, denominator)` of `r_{n,k}(a)`, denominator monic.
    pub fn function(&self, n: usize, k: i64) -> Option<&(Poly, Poly)> {
        self.coeffs.get(&(n, k))
    }

    /// `r_{n,k}` at the given `a`; `PoleInCoefficient` at a pole.
    pub fn eval(&self, n: usize, k: i64, a: &Rational) -> Result<Rational> {
        let (num, den) = self.coeffs.get(&(n, k)).ok_or(Error::InsufficientBasis { m: n as i64 + k })?;
        let dv = den.eval(a);
        if dv.is_zero() {
            return Err(Error::PoleInCoefficient { what: "r", n: n as i64 });
        }
        Ok(num.eval(a) / dv)
    }

    /// For `1 ≤ k ≤ L` the numerator of `r_{n,k}(a)` is divisible by
    /// `(a+n)_k` (R) resp. `(aq^n; q)_k` (qR).
    pub fn pochhammer_factors(&self) -> Result<Report> {
        let mut rep = Report::new();
        let mut bad = None;
        let one = Rational::one();
        for (&(n, k), (num, _)) in &self.coeffs {
            if k < 1 {
                continue;
            }
            let mut factor = Poly::one();
            for i in 0..k {
                let lin = match self.lam.family() {
                    Family::R => Poly::linear(int(n as i64 + i)),
                    Family::QR => Poly::new(vec![one.clone(), -powi(self.lam.q(), n as i64 + i)]),
                };
                factor = &factor * &lin;
            }
            if !num.divisible_by(&factor)? && bad.is_none() {
                bad = Some(format!("n={n}, k={k}"));
            }
        }
        rep.record("const.pochhammer_factor", bad);
        Ok(rep)
    }

    /// Finite case: the limit `a → a_N` of `r_{n,k}` vanishes for
    /// `N−n+1 ≤ k ≤ L` and equals the grid coefficients elsewhere.
    pub fn tail(&self, c: &ConstCoeffs, size: usize) -> Result<Report> {
        let mut rep = Report::new();
        let a = self.lam.a();
        let mut tail = None;
        let mut agree = None;
        let mut seen = false;
        for &n in c.rows.keys() {
            for k in -(self.l as i64)..=self.l as i64 {
                if !self.coeffs.contains_key(&(n, k)) {
                    continue;
                }
                let v = self.eval(n, k, a)?;
                if n as i64 + k > size as i64 {
                    seen = true;
                    if !v.is_zero() && tail.is_none() {
                        tail = Some(format!("n={n}, k={k}: {v}"));
                    }
                } else if v != c.r(n, k) && agree.is_none() {
                    agree = Some(format!("n={n}, k={k}"));
                }
            }
        }
        if !seen {
            tail = Some("no row reaches past N".into());
        }
        rep.record("const.vanishing_tail", tail);
        rep.record("const.limit_agreement", agree);
        Ok(rep)
    }
}

fn sample_rows(
    set: &IndexSet,
    y: &Poly,
    lam: &ParameterSet,
    a: &Rational,
    n_hi: usize,
) -> Result<BTreeMap<usize, Row>> {
    let sample = ParameterSet::new(
        lam.family(),
        a.clone(),
        lam.b().clone(),
        lam.c().clone(),
        lam.d().clone(),
        lam.q().clone(),
    )?;
    let x = xpoly(set, y, &sample)?;
    let l = degree_of(&x)?;
    let polys = generate(set, &sample, n_hi + l)?;
    let fam = MultiIndexedFamily::from_parts(&sample, set, xi_d(set, &sample)?, polys);
    Ok(extract_table(&fam, &x, 0..=n_hi)?.rows)
}

/// Result of the Conjecture 1 fit.
#[derive(Clone, Debug)]
pub struct Conjecture1Fit {
    /// `I(z)` interpolated through `2L+1` energies.
    pub i_poly: Poly,
    pub degree: Option<i64>,
    /// Samples `n` checked beyond the interpolation nodes.
    pub holdouts: Vec<usize>,
}

/// `I(E_n) = Π_j α_j α_{2L+1−j}(E_n) · (−r_{n,0})` interpolated at the first
/// `2L+1` rows; every further row must lie on the same polynomial.
pub fn conjecture1_check(lam: &ParameterSet, c: &ConstCoeffs) -> Result<Conjecture1Fit> {
    let pairs = alpha_pairs(c.l, lam)?;
    let nodes = 2 * c.l + 1;
    let value = |n: usize| -> Rational {
        let z = lam.energy(n as i64);
        let prod: Rational = pairs.iter().map(|p| p.prod_poly.eval(&z)).product();
        -(prod * c.r(n, 0))
    };
    let ns: Vec<usize> = c.rows.keys().copied().collect();
    if ns.len() < nodes + 1 {
        return Err(Error::InvalidInput(format!("need at least {} rows, have {}", nodes + 1, ns.len())));
    }
    let pts: Vec<(Rational, Rational)> = ns[..nodes].iter().map(|&n| (lam.energy(n as i64), value(n))).collect();
    let i_poly = interpolate(&pts).map_err(|_| Error::DegenerateSpectrum("repeated energies among the nodes".into()))?;
    for &n in &ns[nodes..] {
        if i_poly.eval(&lam.energy(n as i64)) != value(n) {
            return Err(Error::ConjectureCounterexample(format!(
                "I(z) fit through n={:?} misses n={n}; λ = {lam}, D = {}, X = {:?}",
                &ns[..nodes],
                c.set,
                c.x.coeffs()
            )));
        }
    }
    Ok(Conjecture1Fit { degree: i_poly.degree(), i_poly, holdouts: ns[nodes..].to_vec() })
}

/// Reflection symmetry of Conjecture 1: the rational function of `n` (R) or
/// `q^n` (qR) interpolating `r_{n,k}` for `k ≥ 1`, evaluated at the reflected
/// point (`n → −n−d̃`, resp. `q^n → q^{−n}/d̃`), reproduces `r_{n,−k}`.
pub fn reflection_check(lam: &ParameterSet, c: &ConstCoeffs) -> Result<Report> {
    let mut rep = Report::new();
    let var = |n: usize| match lam.family() {
        Family::R => int(n as i64),
        Family::QR => powi(lam.q(), n as i64),
    };
    let dt = lam.d_tilde();
    let reflect = |u: &Rational| match lam.family() {
        Family::R => -(u + &dt),
        Family::QR => Rational::one() / (u * &dt),
    };
    for k in 1..=c.l as i64 {
        let pts: Vec<(Rational, Rational)> = c.rows.keys().map(|&n| (var(n), c.r(n, k))).collect();
        let id = format!("const.reflection_k{k}");
        let Some((num, den)) = reconstruct_rational(&pts, 2)? else {
            rep.fail(id, format!("r_(n,{k}) not determined by {} rows", pts.len()));
            continue;
        };
        let mut bad = None;
        for &n in c.rows.keys() {
            let u = reflect(&var(n));
            let dv = den.eval(&u);
            if dv.is_zero() || num.eval(&u) / dv != c.r(n, -k) {
                bad = Some(format!("n={n}"));
                break;
            }
        }
        rep.record(id, bad);
    }
    Ok(rep)
}

fn strip_units(f: &Poly, is_q: bool) -> (Poly, i64) {
    if !is_q || f.is_zero() {
        return (f.clone(), 0);
    }
    let low = f.lowest_exponent();
    let skip = f.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
    let s = low + skip;
    (f.shift_exponent(-s), s)
}

/// Exact quotient of x-functions, treating powers of `z = q^x` as units for
/// qR; `None` when the division leaves a remainder.
fn divide_xfn(num: &Poly, den: &Poly, is_q: bool) -> Result<Option<Poly>> {
    let (n0, sn) = strip_units(num, is_q);
    let (d0, sd) = strip_units(den, is_q);
    let (q, r) = n0.divrem(&d0)?;
    if !r.is_zero() {
        return Ok(None);
    }
    Ok(Some(q.shift_exponent(sn - sd)))
}

/// Proposition 3: `p ∈ span{P_{D,n}}` iff `H̃_D^cont p̌` is a polynomial in
/// `η(x; λ+Mδ)`. The action is formed as one rational x-function; the test is
/// exact divisibility followed by invariance under the reflection of `η`.
pub fn polynomiality_test(p: &Poly, set: &IndexSet, lam: &ParameterSet) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let m = set.m() as i64;
    let lt = lam.twisted_shift(m);
    let (bn, bd) = lt.pot_b_xfn();
    let (dn, dd) = lt.pot_d_xfn();
    let xi = xi_d(set, lam)?;
    let xiu = xi_d(set, &lam.shift(1))?;
    let at = |f: &Poly, offset: i64, shift: i64| f.compose(&lam.eta_xfn(offset, shift));
    let x0 = at(&xi, 0, m - 1);
    let x1 = at(&xi, 1, m - 1);
    let (u0, up, um) = (at(&xiu, 0, m), at(&xiu, 1, m), at(&xiu, -1, m));
    let (p0, pp, pm) = (at(p, 0, m), at(p, 1, m), at(p, -1, m));
    let first = &(&(&bn * &dd) * &(&x0 * &x0)) * &(&(&up * &p0) - &(&u0 * &pp));
    let second = &(&(&dn * &bd) * &(&x1 * &x1)) * &(&(&um * &p0) - &(&u0 * &pm));
    let num = &first + &second;
    let den = &(&(&bd * &dd) * &(&x0 * &x1)) * &u0;
    let Some(quot) = divide_xfn(&num, &den, lam.is_q())? else {
        return Ok(false);
    };
    Ok(lam.xfn_reflect(&quot, m) == quot)
}

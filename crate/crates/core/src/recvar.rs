//! Recurrence relations with variable-dependent coefficients: the `Ř^[s]`
//! recursion, its shift identity, the `3+2M`-term relation satisfied by the
//! multi-indexed polynomials and generation of the family from `M+1`
//! initial members.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::base::ParameterSet;
use crate::error::{Error, Result};
use crate::exact::{count_muls, Newton};
use crate::multi::{c_dn, p_dn, IndexSet, MultiIndexedFamily};
use crate::report::Report;
use crate::{Poly, Rational};

/// `Ř^[s]_{n,k}` for fixed `(s, n)`, keyed by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTable {
    pub s: i64,
    pub n: i64,
    pub entries: BTreeMap<i64, Poly>,
}

/// Memoised evaluation of the recursion
/// `Ř^[s]_{n,k} = A_n Ř^[s-1]_{n+1,k-1} + (B_n − η(x+s)) Ř^[s-1]_{n,k} + C_n Ř^[s-1]_{n-1,k+1}`.
///
/// Entries are x-functions: polynomials in `x` (R) or Laurent polynomials in
/// `q^x` (qR).
pub struct RBuilder {
    lam: ParameterSet,
    memo: HashMap<(i64, i64, i64), Poly>,
    ttrc: HashMap<i64, (Rational, Rational, Rational)>,
}

impl RBuilder {
    pub fn new(lam: &ParameterSet) -> Self {
        RBuilder { lam: lam.clone(), memo: HashMap::new(), ttrc: HashMap::new() }
    }

    fn coeffs(&mut self, n: i64) -> Result<(Rational, Rational, Rational)> {
        if let Some(t) = self.ttrc.get(&n) {
            return Ok(t.clone());
        }
        let t = self.lam.ttrc(n)?;
        self.ttrc.insert(n, t.clone());
        Ok(t)
    }

    pub fn get(&mut self, s: i64, n: i64, k: i64) -> Result<Poly> {
        if s < -1 || k.abs() > s + 1 || n < 0 || n + k < 0 {
            return Ok(Poly::zero());
        }
        if s == -1 {
            return Ok(Poly::one());
        }
        if let Some(p) = self.memo.get(&(s, n, k)) {
            return Ok(p.clone());
        }
        let (a, b, c) = self.coeffs(n)?;
        let up = self.get(s - 1, n + 1, k - 1)?;
        let mid = self.get(s - 1, n, k)?;
        let down = self.get(s - 1, n - 1, k + 1)?;
        let factor = &Poly::constant(b) - &self.lam.eta_xfn(s, 0);
        let v = &(&up.scale(&a) + &(&factor * &mid)) + &down.scale(&c);
        self.memo.insert((s, n, k), v.clone());
        Ok(v)
    }

    pub fn table(&mut self, s: i64, n: i64) -> Result<RTable> {
        let mut entries = BTreeMap::new();
        for k in -(s + 1)..=(s + 1) {
            entries.insert(k, self.get(s, n, k)?);
        }
        Ok(RTable { s, n, entries })
    }

    /// `R^[M]_{n,k}(η)` in the variable `η(x; λ+Mδ)` for all `k`, each
    /// certified to have degree at most `M+1−|k|` by agreement at three
    /// nodes beyond the interpolation window.
    pub fn eta_table(&mut self, m: i64, n: i64) -> Result<BTreeMap<i64, Poly>> {
        let mut out = BTreeMap::new();
        for k in -(m + 1)..=(m + 1) {
            let xf = self.get(m, n, k)?;
            let deg = m + 1 - k.abs();
            let mut nw = Newton::new();
            for x in 0..=deg {
                nw.push(self.lam.eta_at(x, m), self.lam.xfn_eval(&xf, x))
                    .map_err(|_| Error::DegenerateGrid(format!("η({x}; λ+{m}δ) repeats")))?;
            }
            for x in deg + 1..=deg + 3 {
                if nw.eval(&self.lam.eta_at(x, m)) != self.lam.xfn_eval(&xf, x) {
                    return Err(Error::failure(
                        "degree bound of R^[M]_(n,k)",
                        format!("M={m}, n={n}, k={k}, x={x}"),
                    ));
                }
            }
            out.insert(k, nw.to_poly());
        }
        Ok(out)
    }
}

pub fn build_rtable(s: i64, n: i64, lam: &ParameterSet) -> Result<RTable> {
    RBuilder::new(lam).table(s, n)
}

pub fn rtable_eta(m: i64, n: i64, lam: &ParameterSet) -> Result<BTreeMap<i64, Poly>> {
    RBuilder::new(lam).eta_table(m, n)
}

/// `Ř^[s]_{n,k}(x+1) − Ř^[s]_{n,k}(x) = (η(x) − η(x+s+1)) Ř^[s-1]_{n,k}(x+1)`
/// for all `k`, as x-function identities; also the x-independence of the
/// extreme entries.
pub fn check_shift_identity(s: i64, n: i64, lam: &ParameterSet) -> Result<Report> {
    let mut b = RBuilder::new(lam);
    let mut rep = Report::new();
    let deta = &lam.eta_xfn(0, 0) - &lam.eta_xfn(s + 1, 0);
    let mut bad = None;
    for k in -(s + 1)..=(s + 1) {
        let cur = b.get(s, n, k)?;
        let prev = b.get(s - 1, n, k)?;
        let lhs = &lam.xfn_shift(&cur, 1) - &cur;
        let rhs = &deta * &lam.xfn_shift(&prev, 1);
        if lhs != rhs {
            bad = Some(format!("s={s}, n={n}, k={k}"));
            break;
        }
    }
    rep.record("recvar.shift_identity", bad);
    let edge = [s + 1, -(s + 1)].into_iter().find(|&k| {
        b.get(s, n, k).map(|p| p.degree().is_some_and(|d| d != 0) || p.is_laurent()).unwrap_or(true)
    });
    rep.record("recvar.extreme_constant", edge.map(|k| format!("s={s}, n={n}, k={k}")));
    Ok(rep)
}

fn energy_weight(lam: &ParameterSet, set: &IndexSet, n: i64, k: i64) -> Result<Rational> {
    let mut w = Rational::from_integer(1.into());
    let en = lam.energy(n);
    let enk = lam.energy(n + k);
    for &d in set.as_slice() {
        let et = lam.virtual_energy(d as i64);
        let den = &en - &et;
        if den.is_zero() {
            return Err(Error::AssumptionViolated(format!("E_{n} equals a virtual energy")));
        }
        w *= (&enk - &et) / den;
    }
    Ok(w)
}

/// Checks the `3+2M`-term relation at `n` in both normalisations:
/// `Σ_k C_{D,n+k} R^[M]_{n,k} P_{D,n+k} = 0` and the energy-ratio form.
pub fn verify_theorem1(set: &IndexSet, n: usize, lam: &ParameterSet) -> Result<Report> {
    if lam.is_finite() {
        return Err(Error::InvalidParameters("the variable-coefficient relation is checked for generic a".into()));
    }
    let m = set.m() as i64;
    let n = n as i64;
    let fam = MultiIndexedFamily::build(lam, set, (n + m + 1) as usize)?;
    let rs = rtable_eta(m, n, lam)?;
    let mut with_c = Poly::zero();
    let mut with_e = Poly::zero();
    for k in -(m + 1)..=(m + 1) {
        if n + k < 0 {
            continue;
        }
        let term = &rs[&k] * &fam.p(n + k)?;
        with_c = &with_c + &term.scale(&c_dn(lam, set, (n + k) as usize)?);
        with_e = &with_e + &term.scale(&energy_weight(lam, set, n, k)?);
    }
    let mut rep = Report::new();
    rep.record("recvar.theorem1", (!with_c.is_zero()).then(|| format!("D={set}, n={n}")));
    rep.record("recvar.theorem1_energy_form", (!with_e.is_zero()).then(|| format!("D={set}, n={n}")));
    Ok(rep)
}

/// Advances the relation: given `P_{D,n-M-1..n-1}` produces `P_{D,n}`.
fn step(
    b: &mut RBuilder,
    lam: &ParameterSet,
    set: &IndexSet,
    prev: &[Poly],
    target: usize,
) -> Result<Poly> {
    let m = set.m() as i64;
    let n0 = target as i64 - m - 1;
    let rs = b.eta_table(m, n0)?;
    let lead = rs[&(m + 1)].coeff(0) * energy_weight(lam, set, n0, m + 1)?;
    if lead.is_zero() {
        return Err(Error::CannotAdvance { n: target });
    }
    let mut acc = Poly::zero();
    for k in -(m + 1)..=m {
        let idx = n0 + k;
        if idx < 0 {
            continue;
        }
        let w = energy_weight(lam, set, n0, k)?;
        acc = &acc + &(&rs[&k] * &prev[idx as usize]).scale(&w);
    }
    Ok(acc.scale(&(-Rational::from_integer(1.into()) / lead)))
}

/// `P_{D,0..=n_max}` from the determinant expressions for `n <= M` and the
/// `3+2M`-term relation beyond.
pub fn generate(set: &IndexSet, lam: &ParameterSet, n_max: usize) -> Result<Vec<Poly>> {
    let m = set.m();
    let init = MultiIndexedFamily::build(lam, set, n_max.min(m))?;
    let mut out = init.polys().to_vec();
    let mut b = RBuilder::new(lam);
    for target in m + 1..=n_max {
        let next = step(&mut b, lam, set, &out, target)?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "determinant")]
    Determinant,
    #[serde(rename = "recurrence")]
    Recurrence,
}

/// Cost of producing `P_{D,n}` by one method.
#[derive(Clone, Debug, Serialize)]
pub struct CostRow {
    pub method: Method,
    pub n: usize,
    pub muls: u64,
    pub nanos: u128,
}

/// Builds `P_{D,0..=n_max}` both ways, counting multiplications per member.
/// The recurrence path charges `n <= M` to the determinant construction it
/// uses for its initial data. Fails if the two results differ.
pub fn compare_costs(set: &IndexSet, lam: &ParameterSet, n_max: usize) -> Result<Vec<CostRow>> {
    let m = set.m();
    let mut rows = Vec::new();
    let mut det_polys = Vec::new();
    for n in 0..=n_max {
        let t = Instant::now();
        let (p, muls) = count_muls(|| p_dn(set, n, lam));
        rows.push(CostRow { method: Method::Determinant, n, muls, nanos: t.elapsed().as_nanos() });
        det_polys.push(p?);
    }
    let mut rec = Vec::new();
    let mut b = RBuilder::new(lam);
    for n in 0..=n_max {
        let t = Instant::now();
        let (p, muls) = count_muls(|| if n <= m { p_dn(set, n, lam) } else { step(&mut b, lam, set, &rec, n) });
        rows.push(CostRow { method: Method::Recurrence, n, muls, nanos: t.elapsed().as_nanos() });
        rec.push(p?);
    }
    if let Some(n) = (0..=n_max).find(|&n| rec[n] != det_polys[n]) {
        return Err(Error::failure("recurrence generation vs determinant", format!("n={n}")));
    }
    Ok(rows)
}

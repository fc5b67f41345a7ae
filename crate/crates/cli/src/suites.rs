//! Verification suites run by `verify` and `sweep`.

use std::fmt;
use std::str::FromStr;

use mirec::base::ParameterSet;
use mirec::bridge::{eta0_spot_check, rn0_identity_check, to_aw, transport_check};
use mirec::closure::{alpha_order_applies, alpha_order_check, build_closure, verify_closure, verify_ladders};
use mirec::multi::{verify_family, xi_d, IndexSet, MultiIndexedFamily};
use mirec::recconst::{
    check_expansion, conjecture1_check, extract_table, verify_coeff_relations, AContinuation, ConstCoeffs,
};
use mirec::recvar::{check_shift_identity, generate, verify_theorem1};
use mirec::rational::sqrt_exact;
use mirec::report::Report;
use mirec::{Error, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Family,
    Var,
    Const,
    Closure,
    Bridge,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "family" => Suite::Family,
            "var" => Suite::Var,
            "const" => Suite::Const,
            "closure" => Suite::Closure,
            "bridge" => Suite::Bridge,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}; expected family, var, const, closure, bridge or all")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Family => "family",
            Suite::Var => "var",
            Suite::Const => "const",
            Suite::Closure => "closure",
            Suite::Bridge => "bridge",
            Suite::All => "all",
        })
    }
}

impl Suite {
    /// Mode compatibility; `None` if the suite can run on `lam`.
    pub fn mode_error(self, lam: &ParameterSet) -> Option<String> {
        match (self, lam.is_finite()) {
            (Suite::Family | Suite::Closure, false) => Some(format!("suite {self} requires a finite N")),
            (Suite::Var, true) => Some("suite var requires --indeterminate".into()),
            _ => None,
        }
    }

    /// The concrete suites making up `self` for the mode of `lam`. `all`
    /// includes the bridge only where its half-powers are rational.
    pub fn expand(self, lam: &ParameterSet, set: &IndexSet) -> Vec<Suite> {
        let mut out = match self {
            Suite::All if lam.is_finite() => vec![Suite::Family, Suite::Const, Suite::Closure],
            Suite::All => vec![Suite::Var, Suite::Const],
            s => return vec![s],
        };
        let dq = lam.d() * mirec::exact::powi(lam.q(), set.m() as i64);
        if sqrt_exact(lam.d()).is_some() && sqrt_exact(&dq).is_some() {
            out.push(Suite::Bridge);
        }
        out
    }
}

/// Everything a suite needs about one instance.
pub struct Instance<'a> {
    pub lam: &'a ParameterSet,
    pub set: &'a IndexSet,
    pub y: &'a Poly,
    /// Explicit `X`; `None` means `I[Ξ_D Y]`.
    pub x: Option<&'a Poly>,
    pub nmax: usize,
}

type Res<T> = mirec::Result<T>;

impl Instance<'_> {
    fn x_poly(&self) -> Res<Poly> {
        match self.x {
            Some(x) => Ok(x.clone()),
            None => mirec::recconst::xpoly(self.set, self.y, self.lam),
        }
    }

    /// Family with enough members for the coefficient rows.
    fn family(&self, l: usize) -> Res<MultiIndexedFamily> {
        match self.lam.size() {
            Some(n) => MultiIndexedFamily::build(self.lam, self.set, n as usize),
            None => {
                let polys = generate(self.set, self.lam, self.nmax + l)?;
                Ok(MultiIndexedFamily::from_parts(self.lam, self.set, xi_d(self.set, self.lam)?, polys))
            }
        }
    }

    fn rows(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.lam.size().map_or(self.nmax, |n| n as usize)
    }

    fn table(&self) -> Res<(MultiIndexedFamily, ConstCoeffs)> {
        let x = self.x_poly()?;
        let l = x.degree().unwrap_or(0).max(0) as usize;
        let fam = self.family(l)?;
        let c = extract_table(&fam, &x, self.rows())?;
        Ok((fam, c))
    }
}

pub fn run(suite: Suite, inst: &Instance) -> Report {
    let out = match suite {
        Suite::Family => family(inst),
        Suite::Var => var(inst),
        Suite::Const => constant(inst),
        Suite::Closure => closure(inst),
        Suite::Bridge => bridge(inst),
        Suite::All => unreachable!("expanded before running"),
    };
    out.unwrap_or_else(|e| error_report(suite, &e))
}

pub fn error_report(suite: Suite, e: &Error) -> Report {
    let mut rep = Report::new();
    rep.fail(format!("{suite}.error"), format!("{}: {e}", e.code()));
    rep
}

fn family(inst: &Instance) -> Res<Report> {
    let mut rep = inst.lam.verify_base()?;
    rep.extend(verify_family(inst.set, inst.lam, inst.nmax.max(inst.lam.size().unwrap_or(0) as usize))?);
    Ok(rep)
}

fn var(inst: &Instance) -> Res<Report> {
    let mut rep = Report::new();
    for n in 0..=inst.nmax {
        rep.extend(verify_theorem1(inst.set, n, inst.lam)?);
    }
    for s in 1..=3 {
        for n in 0..=inst.nmax.min(3) as i64 {
            rep.extend(check_shift_identity(s, n, inst.lam)?);
        }
    }
    Ok(rep)
}

fn constant(inst: &Instance) -> Res<Report> {
    let (fam, c) = inst.table()?;
    let mut rep = check_expansion(&fam, &c)?;
    let cont = match (inst.lam.size(), inst.x) {
        (Some(n), None) => {
            let rows = AContinuation::tail_rows(n as usize, c.l);
            Some(AContinuation::build(inst.set, inst.y, inst.lam, &rows)?)
        }
        _ => None,
    };
    rep.extend(verify_coeff_relations(&fam, &c, cont.as_ref())?);
    if c.rows.len() > 2 * c.l + 1 {
        match conjecture1_check(inst.lam, &c) {
            Ok(_) => rep.pass("const.conjecture1"),
            Err(e) => rep.fail("const.conjecture1", format!("{}: {e}", e.code())),
        }
    }
    Ok(rep)
}

fn closure(inst: &Instance) -> Res<Report> {
    let (fam, c) = inst.table()?;
    let cd = build_closure(inst.lam, &c)?;
    let mut rep = verify_closure(&fam, &c, &cd)?;
    rep.extend(verify_ladders(&fam, &c, &cd)?);
    // outside its parameter condition the ordering is not claimed
    if alpha_order_applies(c.l, inst.lam) {
        rep.extend(alpha_order_check(c.l, inst.lam, inst.lam.size().unwrap_or(0) as usize));
    }
    Ok(rep)
}

fn bridge(inst: &Instance) -> Res<Report> {
    let (fam, c) = inst.table()?;
    let aw = to_aw(&fam)?;
    let mut rep = eta0_spot_check(&aw)?;
    rep.extend(transport_check(&aw, &c)?);
    rep.extend(rn0_identity_check(&aw, &c)?);
    Ok(rep)
}

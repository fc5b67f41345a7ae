//! End-to-end acceptance run: one PASS/FAIL line per criterion, all checks
//! exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use mirec::base::{Family, ParameterSet};
use mirec::bridge::{eta0_spot_check, eta0_value, rn0_identity_check, to_aw, transport_check};
use mirec::closure::{alpha_order_check, build_closure, verify_closure, verify_ladders};
use mirec::exact::{interpolate, powi};
use mirec::multi::{p_dn, verify_family, xi_d, IndexSet, MultiIndexedFamily};
use mirec::rational::{frac, int};
use mirec::recconst::{
    check_expansion, conjecture1_check, extract_rnk, extract_table, imap, verify_coeff_relations, xpoly,
    AContinuation,
};
use mirec::recvar::{check_shift_identity, compare_costs, generate, verify_theorem1, Method};
use mirec::report::Report;
use mirec::{Error, Poly, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn set(d: &[usize]) -> IndexSet {
    IndexSet::new(d.to_vec()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(rep: &Report, ctx: impl std::fmt::Display) -> Outcome {
    ensure(rep.all_passed(), || {
        let f: Vec<String> = rep.failures().map(|c| format!("{} ({})", c.id, c.witness.as_deref().unwrap_or(""))).collect();
        format!("{ctx}: {}", f.join(", "))
    })
}

fn lib<T>(r: mirec::Result<T>, ctx: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {}: {e}", e.code()))
}

fn generic_family(lam: &ParameterSet, s: &IndexSet, n_max: usize) -> Result<MultiIndexedFamily, String> {
    let polys = lib(generate(s, lam, n_max), "generate")?;
    Ok(MultiIndexedFamily::from_parts(lam, s, lib(xi_d(s, lam), "xi_d")?, polys))
}

fn criterion(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let dt = t.elapsed();
    let out = out.and_then(|()| {
        ensure(dt <= budget, || format!("took {:.1} s, budget {:.0} s", dt.as_secs_f64(), budget.as_secs_f64()))
    });
    match &out {
        Ok(()) => println!("PASS [{id:>2}] {title} ({:.2} s)", dt.as_secs_f64()),
        Err(e) => println!("FAIL [{id:>2}] {title} ({:.2} s): {e}", dt.as_secs_f64()),
    }
    out.is_ok()
}

fn base_family() -> Outcome {
    for lam in [racah_n8(), qracah_n8()] {
        ensure(lam.range_issues().is_empty(), || format!("{lam} out of range"))?;
        passed(&lib(lam.verify_base(), &lam)?, &lam)?;
        let polys = lib(lam.racah_polys(8), &lam)?;
        for (n, p) in polys.iter().enumerate() {
            for x in 0..=8usize {
                let v = p.eval(&lam.eta_at(x as i64, 0));
                ensure(v == hypergeometric_p(&lam, n, x), || format!("{lam}: P̌_{n}({x}) differs from the terminating sum"))?;
            }
        }
    }
    Ok(())
}

fn multi_family(d: &[usize]) -> Outcome {
    let s = set(d);
    for lam in [racah_n8(), qracah_n8()] {
        ensure(lam.multi_range_issues(s.max_index()).is_empty(), || format!("{lam} D={s} out of range"))?;
        passed(&lib(verify_family(&s, &lam, 8), "verify_family")?, format!("{lam} D={s}"))?;
        let fam = lib(MultiIndexedFamily::build(&lam, &s, 8), "build")?;
        ensure(fam.polys()[0] == lib(xi_d(&s, &lam.shift(1)), "xi_d")?, || format!("{lam} D={s}: P_(D,0) ≠ Ξ_D(λ+δ)"))?;
        for (n, p) in fam.polys().iter().enumerate() {
            ensure(p.degree() == Some((s.ell() + n) as i64), || format!("{lam} D={s}: degree of P_(D,{n})"))?;
        }
    }
    Ok(())
}

fn theorem1() -> Outcome {
    let sets: [&[usize]; 7] = [&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]];
    for lam in [racah_generic(), qracah_generic()] {
        for d in sets {
            for n in 0..=6 {
                passed(&lib(verify_theorem1(&set(d), n, &lam), "theorem1")?, format!("{lam} D={d:?} n={n}"))?;
            }
        }
        for s in 0..=3 {
            for n in 0..=6 {
                passed(&lib(check_shift_identity(s, n, &lam), "shift")?, format!("{lam} s={s} n={n}"))?;
            }
        }
    }
    Ok(())
}

fn generation_cost() -> Outcome {
    let s = set(&[2, 3]);
    for lam in [racah_generic(), qracah_generic()] {
        let rec = lib(generate(&s, &lam, 12), "generate")?;
        for (n, p) in rec.iter().enumerate() {
            ensure(*p == lib(p_dn(&s, n, &lam), "p_dn")?, || format!("{lam}: P_(D,{n}) differs"))?;
        }
        let rows = lib(compare_costs(&s, &lam, 12), "compare_costs")?;
        for n in 6..=12 {
            let get = |m: Method| rows.iter().find(|r| r.method == m && r.n == n).map(|r| r.muls).unwrap_or(0);
            let (det, rc) = (get(Method::Determinant), get(Method::Recurrence));
            ensure(rc < det, || format!("{lam} n={n}: recurrence {rc} ≥ determinant {det}"))?;
        }
    }
    Ok(())
}

fn constant_recurrence() -> Outcome {
    let s1 = set(&[1]);
    for lam in ex1_points() {
        let (_, shown) = ex1_x(&lam);
        let fam = generic_family(&lam, &s1, 8)?;
        let c = lib(extract_table(&fam, &shown, 0..=5), "extract")?;
        for n in 0..=5usize {
            let top = ex1_r(&lam, n as i64, 2);
            for k in [-2i64, -1, 1, 2] {
                ensure(c.r(n, k).clone() / c.r(n, 2) == ex1_r(&lam, n as i64, k) / &top, || {
                    format!("{lam} n={n} k={k}: ratio differs from the closed form")
                })?;
            }
        }
    }
    for lam in [racah_generic(), qracah_generic()] {
        for d in [&[1usize][..], &[2]] {
            for y in [Poly::one(), Poly::x()] {
                let s = set(d);
                let x = lib(xpoly(&s, &y, &lam), "xpoly")?;
                let fam = generic_family(&lam, &s, 5 + x.degree().unwrap_or(0) as usize)?;
                let c = lib(extract_table(&fam, &x, 0..=5), "extract")?;
                passed(&lib(check_expansion(&fam, &c), "expansion")?, format!("{lam} D={s} Y={y:?}"))?;
            }
        }
    }
    for lam in [racah_n8(), qracah_n8()] {
        for d in [&[1usize][..], &[2]] {
            for y in [Poly::one(), Poly::x()] {
                let s = set(d);
                let x = lib(xpoly(&s, &y, &lam), "xpoly")?;
                let l = x.degree().unwrap_or(0) as usize;
                let fam = lib(MultiIndexedFamily::build(&lam, &s, 8), "build")?;
                let c = lib(extract_table(&fam, &x, 0..=8), "extract")?;
                passed(&lib(check_expansion(&fam, &c), "grid identity")?, format!("{lam} D={s}"))?;
                let cont = lib(AContinuation::build(&s, &y, &lam, &AContinuation::tail_rows(8, l)), "continuation")?;
                let rep = lib(cont.tail(&c, 8), "tail")?;
                passed(&rep, format!("{lam} D={s} Y={y:?}"))?;
            }
        }
    }
    Ok(())
}

fn coefficient_relations() -> Outcome {
    for lam in [racah_generic(), qracah_generic(), racah_n8(), qracah_n8()] {
        for d in [&[1usize][..], &[2], &[1, 2]] {
            let s = set(d);
            let x = lib(xpoly(&s, &Poly::one(), &lam), "xpoly")?;
            let (fam, rows) = if lam.is_finite() {
                (lib(MultiIndexedFamily::build(&lam, &s, 8), "build")?, 0..=8)
            } else {
                (generic_family(&lam, &s, 6 + x.degree().unwrap_or(0) as usize)?, 0..=6)
            };
            let c = lib(extract_table(&fam, &x, rows), "extract")?;
            let rep = lib(verify_coeff_relations(&fam, &c, None), "relations")?;
            passed(&rep, format!("{lam} D={s}"))?;
            let ids: Vec<&str> = rep.checks.iter().map(|c| c.id.as_str()).collect();
            let mut want = vec!["const.sum_rule", "const.top_coefficient"];
            if lam.is_finite() {
                want.push("const.norm_ratio");
            }
            ensure(want.iter().all(|w| ids.contains(w)), || format!("missing checks in {ids:?}"))?;
        }
        let s = set(&[1]);
        let fam = if lam.is_finite() {
            lib(MultiIndexedFamily::build(&lam, &s, 8), "build")?
        } else {
            generic_family(&lam, &s, 6)?
        };
        let err = extract_rnk(&fam, &Poly::x(), 2);
        ensure(matches!(err, Err(Error::TheoremViolation(_))), || format!("{lam}: X = η accepted: {err:?}"))?;
    }
    Ok(())
}

fn conjecture1() -> Outcome {
    let s = set(&[1]);
    for lam in [racah_generic(), qracah_generic()] {
        let x = lib(xpoly(&s, &Poly::one(), &lam), "xpoly")?;
        let fam = generic_family(&lam, &s, 10)?;
        let c = lib(extract_table(&fam, &x, 0..=7), "extract")?;
        let fit = lib(conjecture1_check(&lam, &c), "conjecture1")?;
        ensure(fit.degree == Some(4), || format!("{lam}: degree {:?}", fit.degree))?;
        ensure(fit.holdouts.len() >= 2, || format!("{lam}: {} holdouts", fit.holdouts.len()))?;
    }
    Ok(())
}

fn closure() -> Outcome {
    for lam in [racah_n8(), qracah_n8()] {
        for (d, k) in [(&[][..], 2usize), (&[1][..], 4)] {
            let s = set(d);
            let x = if s.is_empty() { Poly::x() } else { lib(xpoly(&s, &Poly::one(), &lam), "xpoly")? };
            let fam = lib(MultiIndexedFamily::build(&lam, &s, 8), "build")?;
            let c = lib(extract_table(&fam, &x, 0..=8), "extract")?;
            passed(&alpha_order_check(c.l, &lam, 8), format!("{lam}: d̃ outside the ordering range"))?;
            let cd = lib(build_closure(&lam, &c), "build_closure")?;
            ensure(cd.k == k, || format!("{lam} D={s}: K = {}", cd.k))?;
            passed(&lib(verify_closure(&fam, &c, &cd), "closure")?, format!("{lam} D={s}"))?;
            passed(&lib(verify_ladders(&fam, &c, &cd), "ladders")?, format!("{lam} D={s}"))?;
        }
    }
    Ok(())
}

fn bridge() -> Outcome {
    let q = frac(1, 4);
    let lam = lib(ParameterSet::q_racah(frac(7, 3), frac(2, 13), frac(5, 9), &q * &q, q.clone()), "params")?;
    for d in [&[][..], &[1], &[1, 2]] {
        let s = set(d);
        let x = if s.is_empty() { Poly::x() } else { lib(xpoly(&s, &Poly::one(), &lam), "xpoly")? };
        let l = x.degree().unwrap_or(0) as usize;
        let fam = lib(MultiIndexedFamily::build(&lam, &s, 4 + l), "build")?;
        let c = lib(extract_table(&fam, &x, 0..=4), "extract")?;
        let aw = lib(to_aw(&fam), "to_aw")?;
        passed(&lib(eta0_spot_check(&aw), "eta0")?, format!("D={s}"))?;
        passed(&lib(transport_check(&aw, &c), "transport")?, format!("D={s}"))?;
        passed(&lib(rn0_identity_check(&aw, &c), "rn0")?, format!("D={s}"))?;
        if s.is_empty() {
            // classical value (a1a4, a2a4, a3a4; q)_n / ((2a4)^n (a1a2a3a4 q^{n-1}; q)_n)
            let [a1, a2, a3, a4] = aw.params.a.clone();
            for n in 0..=4usize {
                let want = powi(&(int(2) * &a4), -(n as i64))
                    * qpoch(&(&a1 * &a4), &q, n)
                    * qpoch(&(&a2 * &a4), &q, n)
                    * qpoch(&(&a3 * &a4), &q, n)
                    / qpoch(&(&a1 * &a2 * &a3 * &a4 * powi(&q, n as i64 - 1)), &q, n);
                ensure(lib(eta0_value(&aw.params, &s, n), "eta0")? == want, || format!("n={n}: classical value"))?;
            }
        }
    }
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    loop {
        let num = rng.gen_range(-span..=span);
        if num != 0 {
            return frac(num, rng.gen_range(1..=12));
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<Rational> = (0..=deg).map(|_| random_rational(rng, 40)).collect();
    if rng.gen_bool(0.3) {
        c[0] = Rational::zero();
    }
    Poly::new(c)
}

fn random_tuple(rng: &mut ChaCha8Rng, family: Family) -> ParameterSet {
    loop {
        let p: Vec<Rational> = (0..4).map(|_| random_rational(rng, 60)).collect();
        let q = frac(rng.gen_range(1..=8), 9);
        let lam = match family {
            Family::R => ParameterSet::racah(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()),
            Family::QR => ParameterSet::q_racah(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone(), q),
        };
        if let Ok(lam) = lam {
            if lam.genericity_issues(8).is_empty() {
                return lam;
            }
        }
    }
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_017);
    for family in [Family::R, Family::QR] {
        for case in 0..200 {
            let lam = random_tuple(&mut rng, family);
            let ctx = |what: &str| format!("{family} case {case} ({lam}): {what}");

            let p = random_poly(&mut rng, 6);
            let deg = p.degree().unwrap_or(0).max(0) as i64;
            let pts: Vec<(Rational, Rational)> =
                (0..=deg).map(|x| lam.eta_at(x, 0)).map(|e| (e.clone(), p.eval(&e))).collect();
            let back = interpolate(&pts).map_err(|e| ctx(&format!("interpolate: {e}")))?;
            ensure(back == p, || ctx("interpolation round-trip"))?;

            let f = random_poly(&mut rng, 8);
            let mut g = random_poly(&mut rng, 4);
            if g.is_zero() {
                g = Poly::one();
            }
            let (quo, rem) = f.divrem(&g).map_err(|e| ctx(&format!("divrem: {e}")))?;
            ensure(&(&quo * &g) + &rem == f, || ctx("divrem reconstruction"))?;
            ensure(rem.is_zero() || rem.degree() < g.degree(), || ctx("remainder degree"))?;

            let h = random_poly(&mut rng, 4);
            let big = imap(&h, &lam).map_err(|e| ctx(&format!("imap: {e}")))?;
            for x in 1..=6i64 {
                let lhs = big.eval(&lam.eta_at(x, 0)) - big.eval(&lam.eta_at(x - 1, 0));
                let rhs = (lam.eta_at(x, 0) - lam.eta_at(x - 1, 0)) * h.eval(&lam.eta_at(x, -1));
                ensure(lhs == rhs, || ctx(&format!("imap telescoping at x={x}")))?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut ok = vec![
        criterion(1, "base family: grid identities and terminating sums, N=8", secs(5), base_family),
    ];
    for d in [&[1usize][..], &[2], &[1, 2], &[1, 3]] {
        ok.push(criterion(2, &format!("multi-indexed family D={d:?}, N=8"), secs(30), || multi_family(d)));
    }
    ok.push(criterion(3, "variable-coefficient relation, M ≤ 2, n ≤ 6", secs(60), theorem1));
    ok.push(criterion(4, "recurrence generation matches determinants and is cheaper", secs(60), generation_cost));
    ok.push(criterion(5, "constant-coefficient recurrences: closed forms, grid identity, tail", secs(120), constant_recurrence));
    ok.push(criterion(6, "coefficient relations and the X = η negative control", secs(60), coefficient_relations));
    ok.push(criterion(7, "I(z) has degree 4 for D={1} and predicts held-out rows", secs(60), conjecture1));
    ok.push(criterion(8, "closure of order 2 and 4, ladders, resummation", secs(300), closure));
    ok.push(criterion(9, "Askey-Wilson bridge at q=1/4, d=q²", secs(60), bridge));
    ok.push(criterion(10, "seeded property suites, 200 tuples per family", secs(120), property_suites));
    let failed = ok.iter().filter(|b| !**b).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

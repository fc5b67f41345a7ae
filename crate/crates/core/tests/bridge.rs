mod common;

use common::*;
use mirec::base::ParameterSet;
use mirec::bridge::*;
use mirec::multi::{IndexSet, MultiIndexedFamily};
use mirec::rational::{frac, int};
use mirec::recconst::{extract_table, xpoly};
use mirec::{Error, Poly, Rational};

fn set(d: &[usize]) -> IndexSet {
    IndexSet::new(d.to_vec()).unwrap()
}

fn qr_quarter() -> ParameterSet {
    let q = frac(1, 4);
    ParameterSet::q_racah(frac(7, 3), frac(2, 13), frac(5, 9), &q * &q, q).unwrap()
}

#[test]
fn eta0_matches_closed_form() {
    for lam in [qr_quarter(), racah_generic()] {
        for d in [&[][..], &[1], &[2], &[1, 2], &[1, 3]] {
            let s = set(d);
            let fam = MultiIndexedFamily::build(&lam, &s, 4).unwrap();
            let aw = to_aw(&fam).unwrap();
            let rep = eta0_spot_check(&aw).unwrap();
            assert!(rep.all_passed(), "{lam} D={s}");
        }
    }
}

#[test]
fn map_params_examples() {
    let lam = ParameterSet::racah(frac(-37, 3), frac(29, 5), frac(3, 7), int(2)).unwrap();
    let aw = map_params(&lam, 0).unwrap();
    assert_eq!(aw.a, [frac(-40, 3), frac(24, 5), frac(-4, 7), int(1)]);
    assert_eq!(aw.to_racah().unwrap(), lam);

    let lq = qr_quarter();
    let aw = map_params(&lq, 2).unwrap();
    let q = frac(1, 4);
    assert_eq!(aw.a, [frac(7, 3) / &q, frac(2, 13) / &q, frac(5, 9) / &q, q.clone()]);
    assert_eq!(aw.m1, 2);
    assert_eq!(aw.m2, 0);
    assert_eq!(aw.to_racah().unwrap(), lq);

    // d = 3/17 has no rational square root
    assert!(matches!(map_params(&qracah_generic(), 0), Err(Error::IrrationalShift(_))));
}

#[test]
fn eta0_is_the_image_of_x_zero() {
    let lam = racah_generic();
    let fam = MultiIndexedFamily::build(&lam, &set(&[1, 2]), 2).unwrap();
    let aw = to_aw(&fam).unwrap();
    let d = lam.d().clone();
    assert_eq!(aw.params.eta0().unwrap(), -((&d + int(2)) * (&d + int(2))) / int(4));
    assert_eq!(aw.transport(&Poly::x()).eval(&aw.params.eta0().unwrap()), Rational::from_integer(0.into()));

    let lq = qr_quarter();
    let fam = MultiIndexedFamily::build(&lq, &set(&[1]), 2).unwrap();
    let aw = to_aw(&fam).unwrap();
    assert_eq!(aw.transport(&Poly::x()).eval(&aw.params.eta0().unwrap()), Rational::from_integer(0.into()));
    for p in &aw.polys {
        assert_eq!(p.lead(), Some(&Rational::from_integer(1.into())));
    }
}

#[test]
fn empty_set_closed_form_is_classical() {
    let lq = qr_quarter();
    let fam = MultiIndexedFamily::build(&lq, &IndexSet::empty(), 5).unwrap();
    let aw = to_aw(&fam).unwrap();
    let [a1, a2, a3, a4] = aw.params.a.clone();
    let q = aw.params.q.clone();
    for n in 0..=5usize {
        let ni = n as i64;
        let want = mirec::exact::powi(&(int(2) * &a4), -ni)
            * qpoch(&(&a1 * &a4), &q, n)
            * qpoch(&(&a2 * &a4), &q, n)
            * qpoch(&(&a3 * &a4), &q, n)
            / qpoch(&(&a1 * &a2 * &a3 * &a4 * mirec::exact::powi(&q, ni - 1)), &q, n);
        assert_eq!(eta0_value(&aw.params, &aw.set, n).unwrap(), want);
    }
}

#[test]
fn transported_recurrences() {
    for lam in [qr_quarter(), racah_generic()] {
        for (d, y) in [(&[][..], None), (&[1][..], Some(Poly::one())), (&[1, 2][..], Some(Poly::one())), (&[1][..], Some(Poly::x()))] {
            let s = set(d);
            let x = match &y {
                None => Poly::x(),
                Some(y) => xpoly(&s, y, &lam).unwrap(),
            };
            let l = x.degree().unwrap() as usize;
            let fam = MultiIndexedFamily::build(&lam, &s, 4 + l).unwrap();
            let c = extract_table(&fam, &x, 0..=4).unwrap();
            let aw = to_aw(&fam).unwrap();
            assert!(eta0_spot_check(&aw).unwrap().all_passed());
            let t = transport_check(&aw, &c).unwrap();
            assert!(t.all_passed(), "{lam} D={s} {:?}", t.failures().collect::<Vec<_>>());
            let r = rn0_identity_check(&aw, &c).unwrap();
            assert!(r.all_passed(), "{lam} D={s} {:?}", r.failures().collect::<Vec<_>>());
            // the same rows also satisfy the sum rule
            for n in 0..=4usize {
                let s: Rational = (1..=l as i64).map(|k| c.r(n, k) + c.r(n, -k)).sum();
                assert_eq!(c.r(n, 0), -s);
            }
        }
    }
}

#[test]
fn wrong_parameters_are_detected() {
    let lq = qr_quarter();
    let fam = MultiIndexedFamily::build(&lq, &set(&[1]), 3).unwrap();
    let mut aw = to_aw(&fam).unwrap();
    aw.params.a.swap(0, 2);
    assert!(!eta0_spot_check(&aw).unwrap().all_passed());

    let x = xpoly(&set(&[1]), &Poly::one(), &lq).unwrap();
    let c = extract_table(&fam, &x, 0..=1).unwrap();
    let mut aw = to_aw(&fam).unwrap();
    aw.scale[2] = &aw.scale[2] * int(2);
    assert!(!rn0_identity_check(&aw, &c).unwrap().all_passed());
}

mod common;

use common::*;
use mirec::base::Family;
use mirec::multi::{casoratian, deformed, lead_p, p_dn, verify_family, xi_d, IndexSet, MultiIndexedFamily};
use mirec::rational::int;
use mirec::{Poly, Rational};
use num_traits::Zero;

fn set(d: &[usize]) -> IndexSet {
    IndexSet::new(d.to_vec()).unwrap()
}

#[test]
fn casoratian_small_cases() {
    let none: Vec<fn(&Rational) -> mirec::Result<Rational>> = vec![];
    assert_eq!(casoratian(&none, &int(3)).unwrap(), int(1));
    let one = |_: &Rational| Ok(int(1));
    let id = |x: &Rational| Ok(x.clone());
    type Entry<'a> = &'a dyn Fn(&Rational) -> mirec::Result<Rational>;
    let fs: Vec<Entry> = vec![&one, &id];
    assert_eq!(casoratian(&fs, &int(5)).unwrap(), int(1));
    assert_eq!(casoratian(&fs[1..], &int(5)).unwrap(), int(5));
}

#[test]
fn denominator_polynomial_basics() {
    for lam in [racah_generic(), qracah_generic()] {
        assert_eq!(xi_d(&IndexSet::empty(), &lam).unwrap(), Poly::one());
        // M = 1: Ξ_D is ξ_{d_1} itself
        assert_eq!(xi_d(&set(&[1]), &lam).unwrap(), lam.xi_v(1).unwrap());
        assert_eq!(xi_d(&set(&[2]), &lam).unwrap(), lam.xi_v(2).unwrap());
        assert_eq!(xi_d(&set(&[1, 2]), &lam).unwrap().degree(), Some(2));
    }
}

#[test]
fn empty_set_reduces_to_base() {
    for lam in [racah_generic(), qracah_generic()] {
        let base = lam.racah_polys(4).unwrap();
        for (n, p) in base.iter().enumerate() {
            assert_eq!(&p_dn(&IndexSet::empty(), n, &lam).unwrap(), p);
        }
    }
}

#[test]
fn leading_coefficient_d1_n1() {
    for lam in [racah_generic(), qracah_generic()] {
        let p = p_dn(&set(&[1]), 1, &lam).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.lead().unwrap(), &lead_p(&lam, &set(&[1]), 1));
    }
}

#[test]
fn generic_families_are_polynomial_and_normalized() {
    for lam in [racah_generic(), qracah_generic()] {
        for d in [&[1usize][..], &[2], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 4]] {
            let s = set(d);
            let fam = MultiIndexedFamily::build(&lam, &s, 3).unwrap();
            assert!(fam.normalized());
            fam.certify(2 * (s.ell() + 3) + 3).unwrap();
            assert_eq!(fam.polys()[0], xi_d(&s, &lam.shift(1)).unwrap(), "shape invariance {s}");
        }
    }
}

#[test]
fn deformed_ground_state_and_orthogonality_n6() {
    let lam = mirec::base::ParameterSet::finite(
        Family::R,
        6,
        mirec::rational::frac(31, 3),
        mirec::rational::frac(1, 2),
        mirec::rational::frac(3, 4),
        Rational::zero(),
    )
    .unwrap();
    let s = set(&[1]);
    let def = deformed(&s, &lam).unwrap();
    let fam = MultiIndexedFamily::build(&lam, &s, 2).unwrap();
    let ground: Vec<Rational> = (0..=6).map(|x| fam.p_check(0, x)).collect();
    assert!(def.h.mul_vec(&ground).iter().all(|v| v.is_zero()));
    assert_eq!(def.psi_sq.values[0], int(1));
    let xi1 = fam.xi_check(1);
    let s12: Rational = (0..=6usize)
        .map(|x| &def.psi_sq.values[x] / &xi1 * fam.p_check(1, x as i64) * fam.p_check(2, x as i64))
        .sum();
    assert!(s12.is_zero());
}

#[test]
fn empty_set_deformation_is_classical() {
    let lam = racah_n8();
    let def = deformed(&IndexSet::empty(), &lam).unwrap();
    for x in 0..=8 {
        assert_eq!(def.b_d.values[x], lam.pot_b(x as i64).unwrap());
        assert_eq!(def.d_d.values[x], lam.pot_d(x as i64).unwrap());
    }
    assert_eq!(def.h, lam.hamiltonian().unwrap());
}

#[test]
fn finite_family_identities() {
    for lam in [racah_n8(), qracah_n8()] {
        for d in [&[][..], &[1usize], &[2], &[1, 2], &[1, 3]] {
            let s = set(d);
            assert!(lam.multi_range_issues(s.max_index()).is_empty(), "{lam} {s}");
            let rep = verify_family(&s, &lam, 8).unwrap();
            assert!(rep.all_passed(), "{lam} {s}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}

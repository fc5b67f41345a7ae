mod common;

use common::*;
use mirec::multi::{p_dn, IndexSet};
use mirec::recvar::{build_rtable, check_shift_identity, compare_costs, generate, rtable_eta, verify_theorem1, Method};
use mirec::{Poly, Rational};

fn set(d: &[usize]) -> IndexSet {
    IndexSet::new(d.to_vec()).unwrap()
}

#[test]
fn low_order_tables() {
    for lam in [racah_generic(), qracah_generic()] {
        for n in 0..4i64 {
            let (a, b, c) = lam.ttrc(n).unwrap();
            let t0 = build_rtable(0, n, &lam).unwrap();
            assert_eq!(t0.entries[&1], Poly::constant(a.clone()));
            assert_eq!(t0.entries[&0], &Poly::constant(b) - &lam.eta_xfn(0, 0));
            assert_eq!(t0.entries[&-1], Poly::constant(c.clone()));
            let t1 = build_rtable(1, n, &lam).unwrap();
            let a1 = lam.coef_a(n + 1).unwrap();
            assert_eq!(t1.entries[&2], Poly::constant(&a * &a1));
            let tm = build_rtable(-1, n, &lam).unwrap();
            assert_eq!(tm.entries[&0], Poly::one());
        }
    }
}

#[test]
fn eta_form_extremes_and_m1() {
    for lam in [racah_generic(), qracah_generic()] {
        for m in 0..3i64 {
            let n = 2i64;
            let rs = rtable_eta(m, n, &lam).unwrap();
            let top: Rational = (0..=m).map(|j| lam.coef_a(n + j).unwrap()).product();
            assert_eq!(rs[&(m + 1)], Poly::constant(top));
            let bottom: Rational = (0..=m).map(|j| lam.coef_c(n - j).unwrap()).product();
            assert_eq!(rs[&-(m + 1)], Poly::constant(bottom));
        }
        // M = 1, k = 1: A_n (B_n + B_{n+1} − η(x) − η(x+1))
        let n = 3i64;
        let rs = rtable_eta(1, n, &lam).unwrap();
        let (a, b, _) = lam.ttrc(n).unwrap();
        let (_, b1, _) = lam.ttrc(n + 1).unwrap();
        for x in 0..6i64 {
            let expect = &a * (&b + &b1 - lam.eta_at(x, 0) - lam.eta_at(x + 1, 0));
            assert_eq!(rs[&1].eval(&lam.eta_at(x, 1)), expect);
        }
    }
}

#[test]
fn shift_identity_up_to_s3() {
    for lam in [racah_generic(), qracah_generic()] {
        for s in 0..=3 {
            for n in 0..4 {
                let rep = check_shift_identity(s, n, &lam).unwrap();
                assert!(rep.all_passed(), "{lam} {rep:?}");
            }
        }
    }
}

#[test]
fn theorem1_small() {
    for lam in [racah_generic(), qracah_generic()] {
        for d in [&[][..], &[1usize], &[1, 3]] {
            for n in 0..=3 {
                let rep = verify_theorem1(&set(d), n, &lam).unwrap();
                assert!(rep.all_passed(), "{lam} D={d:?} n={n}");
            }
        }
    }
}

#[test]
fn generation_matches_determinant() {
    for lam in [racah_generic(), qracah_generic()] {
        for d in [&[][..], &[1usize], &[1, 2]] {
            let g = generate(&set(d), &lam, 6).unwrap();
            for (n, p) in g.iter().enumerate() {
                assert_eq!(p, &p_dn(&set(d), n, &lam).unwrap(), "D={d:?} n={n}");
            }
        }
    }
}

#[test]
fn recurrence_is_cheaper_from_n6() {
    for lam in [racah_generic(), qracah_generic()] {
        let rows = compare_costs(&set(&[2, 3]), &lam, 12).unwrap();
        for n in 6..=12 {
            let det = rows.iter().find(|r| r.method == Method::Determinant && r.n == n).unwrap();
            let rec = rows.iter().find(|r| r.method == Method::Recurrence && r.n == n).unwrap();
            assert!(rec.muls < det.muls, "n={n}: {} vs {}", rec.muls, det.muls);
        }
    }
}

#[test]
fn cost_counts_are_deterministic() {
    let a = compare_costs(&set(&[1]), &racah_generic(), 5).unwrap();
    let b = compare_costs(&set(&[1]), &racah_generic(), 5).unwrap();
    let counts = |r: &[mirec::recvar::CostRow]| r.iter().map(|c| c.muls).collect::<Vec<_>>();
    assert_eq!(counts(&a), counts(&b));
}

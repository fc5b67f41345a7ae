use mirec::exact::{interpolate, powi, reconstruct_rational, DenseMatrix, DensePoly, Newton, Thiele};
use mirec::rational::{format_rational, frac, int, parse_rational};
use mirec::{Error, Matrix, Poly, Rational};
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-500i64..=500, 1i64..=60).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(Poly::new)
}

fn distinct_nodes(k: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(-40i64..=40, k).prop_flat_map(|s| {
        let v: Vec<i64> = s.into_iter().collect();
        (Just(v), 1i64..=7).prop_map(|(v, d)| v.into_iter().map(|n| frac(n, d)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn interpolation_round_trip(p in poly(7), xs in distinct_nodes(8)) {
        let pts: Vec<_> = xs.iter().map(|x| (x.clone(), p.eval(x))).collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), p.clone());
        let mut nw = Newton::new();
        for (x, y) in &pts {
            nw.push(x.clone(), y.clone()).unwrap();
        }
        let probe = frac(101, 3);
        prop_assert_eq!(nw.eval(&probe), p.eval(&probe));
    }

    #[test]
    fn divrem_round_trip(f in poly(9), g in poly(4)) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn gcd_of_products(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = (&a * &c).gcd(&(&b * &c));
        prop_assert!(g.divisible_by(&c).unwrap());
        prop_assert!((&a * &c).divisible_by(&g).unwrap());
        prop_assert!((&b * &c).divisible_by(&g).unwrap());
    }

    #[test]
    fn rational_reconstruction(num in poly(3), den in poly(3), xs in distinct_nodes(12)) {
        prop_assume!(!num.is_zero() && !den.is_zero());
        prop_assume!(xs.iter().all(|x| !den.eval(x).is_zero()));
        let pts: Vec<_> = xs.iter().map(|x| (x.clone(), num.eval(x) / den.eval(x))).collect();
        let (n, d) = reconstruct_rational(&pts, 2).unwrap().expect("fits the budget");
        prop_assert_eq!(d.lead(), Some(&Rational::one()));
        prop_assert_eq!(&n * &den, &d * &num);

        let mut th = Thiele::new();
        let mut built = true;
        for (x, y) in &pts[..8] {
            if th.push(x.clone(), y.clone()).is_err() {
                built = false;
                break;
            }
        }
        if built {
            if let Some((tn, td)) = th.to_rational() {
                prop_assert_eq!(&tn * &den, &td * &num);
            }
        }
    }

    #[test]
    fn matrix_inverse(entries in prop::collection::vec(rat(), 16)) {
        let m = Matrix::from_fn(4, 4, |i, j| entries[4 * i + j].clone());
        prop_assume!(!m.det().is_zero());
        let inv = m.inverse().unwrap();
        let v: Vec<Rational> = (0..4).map(|i| int(i + 1)).collect();
        prop_assert_eq!(m.mul_vec(&inv.mul_vec(&v)), v);
    }

    #[test]
    fn text_round_trip(r in rat()) {
        let s = format_rational(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn powi_laws(x in nonzero_rat(), a in -6i64..=6, b in -6i64..=6) {
        prop_assert_eq!(powi(&x, a) * powi(&x, b), powi(&x, a + b));
    }
}

#[test]
fn parse_rejects_non_canonical() {
    for bad in ["2/4", "1/0", "3/-4", "", "1/2/3", "x"] {
        assert!(parse_rational(bad).is_err(), "{bad}");
    }
    assert_eq!(parse_rational("-7/3").unwrap(), frac(-7, 3));
}

#[test]
fn interpolation_rejects_duplicates() {
    let pts = vec![(int(1), int(2)), (int(1), int(3))];
    assert!(matches!(interpolate(&pts), Err(Error::DuplicateNode)));
    let mut th = Thiele::new();
    th.push(int(0), int(1)).unwrap();
    assert!(matches!(th.push(int(0), int(1)), Err(Error::DuplicateNode)));
    // equal values make the first reciprocal difference infinite
    assert!(matches!(th.push(int(2), int(1)), Err(Error::DegenerateGrid(_))));
    assert_eq!(th.len(), 1);
}

#[test]
fn thiele_matches_known_function() {
    // (x² + 1)/(x − 3)
    let f = |x: &Rational| (x * x + int(1)) / (x - int(3));
    let mut th = Thiele::new();
    for x in [0, 1, 2, 4] {
        th.push(int(x), f(&int(x))).unwrap();
    }
    // the fraction is complete: a further consistent node has an infinite
    // reciprocal difference
    assert!(matches!(th.push(int(5), f(&int(5))), Err(Error::DegenerateGrid(_))));
    let (n, d) = th.to_rational().unwrap();
    assert_eq!(n, Poly::new(vec![int(1), int(0), int(1)]));
    assert_eq!(d, Poly::new(vec![int(-3), int(1)]));
    assert_eq!(th.eval(&frac(7, 2)), Some(f(&frac(7, 2))));
}

#[test]
fn reconstruction_respects_budget() {
    let pts: Vec<_> = (0..4).map(|x| (int(x), Rational::one() / (int(x) * int(x) + int(1)))).collect();
    assert!(reconstruct_rational(&pts, 2).unwrap().is_none());
}

#[test]
fn generic_over_other_fields() {
    type Q = Ratio<i64>;
    let p: DensePoly<Q> = DensePoly::new(vec![Q::new(1, 2), Q::from_integer(-3), Q::new(2, 5)]);
    let pts: Vec<(Q, Q)> = (0..3).map(|x| (Q::from_integer(x), p.eval(&Q::from_integer(x)))).collect();
    assert_eq!(interpolate(&pts).unwrap(), p);
    let m: DenseMatrix<Q> = DenseMatrix::from_rows(vec![vec![Q::from_integer(2), Q::one()], vec![Q::one(), Q::one()]]);
    assert_eq!(m.det(), Q::one());
}

//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use mirec::base::{Family, ParameterSet};
use mirec::rational::{frac, int};
use mirec::exact::powi;
use mirec::{Poly, Rational};
use num_traits::{One, Zero};

pub fn poch(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

pub fn qpoch(a: &Rational, q: &Rational, k: usize) -> Rational {
    let mut t = a.clone();
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= Rational::one() - &t;
        t *= q;
    }
    acc
}

fn qp(q: &Rational, k: i64) -> Rational {
    let mut acc = Rational::one();
    let base = if k < 0 { Rational::one() / q } else { q.clone() };
    for _ in 0..k.abs() {
        acc *= &base;
    }
    acc
}

/// Terminating `4F3` / `4φ3` value of `P̌_n(x)` summed term by term.
pub fn hypergeometric_p(lam: &ParameterSet, n: usize, x: usize) -> Rational {
    let (a, b, c, d) = (lam.a(), lam.b(), lam.c(), lam.d());
    let mut sum = Rational::zero();
    match lam.family() {
        Family::R => {
            let dt = a + b + c - d - Rational::one();
            let top = [int(-(n as i64)), &dt + int(n as i64), int(-(x as i64)), d + int(x as i64)];
            for k in 0..=n.min(x) {
                let mut t = Rational::one();
                for p in &top {
                    t *= poch(p, k);
                }
                t /= poch(a, k) * poch(b, k) * poch(c, k) * poch(&Rational::one(), k);
                sum += t;
            }
        }
        Family::QR => {
            let q = lam.q();
            let dt = a * b * c / (d * q);
            let top = [qp(q, -(n as i64)), &dt * qp(q, n as i64), qp(q, -(x as i64)), d * qp(q, x as i64)];
            for k in 0..=n.min(x) {
                let mut t = qp(q, k as i64);
                for p in &top {
                    t *= qpoch(p, q, k);
                }
                t /= qpoch(a, q, k) * qpoch(b, q, k) * qpoch(c, q, k) * qpoch(q, q, k);
                sum += t;
            }
        }
    }
    sum
}

/// Finite Racah system, `N = 8`, inside the positivity ranges and with
/// `d̃ = 107/20 > 3`.
pub fn racah_n8() -> ParameterSet {
    ParameterSet::finite(Family::R, 8, frac(57, 4), frac(1, 2), frac(2, 5), Rational::one()).unwrap()
}

/// Finite q-Racah system, `q = 1/2`, `N = 8`, inside the positivity ranges
/// and with `d̃ < q^3`.
pub fn qracah_n8() -> ParameterSet {
    ParameterSet::finite(Family::QR, 8, frac(1, 20000), frac(1, 2), frac(1, 3), frac(1, 2)).unwrap()
}

/// Generic (infinite-family) points.
pub fn racah_generic() -> ParameterSet {
    ParameterSet::racah(frac(-37, 3), frac(29, 5), frac(3, 7), frac(2, 11)).unwrap()
}

pub fn qracah_generic() -> ParameterSet {
    ParameterSet::q_racah(frac(7, 3), frac(2, 13), frac(5, 9), frac(3, 17), frac(1, 2)).unwrap()
}

pub struct Sig {
    pub s1: Rational,
    pub s2: Rational,
    pub t1: Rational,
    pub t2: Rational,
}

pub fn sig(lam: &ParameterSet) -> Sig {
    let (a, b, c, d) = (lam.a(), lam.b(), lam.c(), lam.d());
    Sig { s1: a + b, s2: a * b, t1: c + d, t2: c * d }
}

/// Displayed normalisation factor and `X(η)` of the D={1} examples.
pub fn ex1_x(lam: &ParameterSet) -> (Rational, Poly) {
    let (a, b, c, d) = (lam.a().clone(), lam.b().clone(), lam.c().clone(), lam.d().clone());
    let s = sig(lam);
    let one = Rational::one();
    match lam.family() {
        Family::R => {
            let f = int(2) * &c * (&d - &a + &one) * (&d - &b + &one);
            let lin = -(&s.s1 * (int(2) * &c + &d + int(2) * &s.t2)) + int(2) * &s.s2 * &c + int(2) * &s.t1
                + &s.t2 * (int(5) + int(2) * &d)
                + &d * &d;
            let quad = int(2) - &s.s1 + &s.t1;
            (f, Poly::new(vec![Rational::zero(), lin, quad]))
        }
        Family::QR => {
            let q = lam.q().clone();
            let f = (&one + &q) * (&one - &c) * (&one - &d * &q / &a) * (&one - &d * &q / &b);
            let q2 = &q * &q;
            let quad = &one - &s.t2 * &q2 / &s.s2;
            let lin = &q2 * (&one + &q - int(2) * &c * &q) * &d * &d / &s.s2
                - (&s.s1 * &q * (&one + &q) * (&one - &c) + (&one - &q) * (&s.s2 + &c * &q2)) * &d / &s.s2
                + int(2)
                - &c * (&one + &q);
            (f, Poly::new(vec![Rational::zero(), lin, quad]))
        }
    }
}

/// Closed forms of `r_{n,k}` for D={1}, Y=1 with the displayed normalisation.
pub fn ex1_r(lam: &ParameterSet, n: i64, k: i64) -> Rational {
    let (a, b, c, d) = (lam.a().clone(), lam.b().clone(), lam.c().clone(), lam.d().clone());
    let s = sig(lam);
    let dt = lam.d_tilde();
    let one = Rational::one();
    let nn = int(n);
    match lam.family() {
        Family::R => {
            let kap = int(2) - &s.s1 + &s.t1;
            match k {
                2 => {
                    &kap * (&c + &nn) * (&c + &nn + int(3))
                        * poch(&(&a + &nn), 2)
                        * poch(&(&b + &nn), 2)
                        * poch(&(&dt + &nn), 2)
                        / poch(&(&dt + int(2 * n)), 4)
                }
                -2 => {
                    &kap * (&dt - &c + &nn - int(3)) * (&dt - &c + &nn)
                        * poch(&(&dt - &a + &nn - &one), 2)
                        * poch(&(&dt - &b + &nn - &one), 2)
                        * poch(&(&nn - &one), 2)
                        / poch(&(&dt + int(2 * n - 3)), 4)
                }
                1 => {
                    let pre = int(2) * (&a + &nn) * (&b + &nn) * (&c + &nn) * (&c + &nn + int(2)) * (&dt - &c + &nn)
                        * (&dt + &nn)
                        / ((&dt + int(2 * n + 3)) * poch(&(&dt + int(2 * n - 1)), 3));
                    let br = -(int(2) * &kap * &nn * (&nn + &dt + &one))
                        + int(2) * (&one - &dt) * (&one + &c - &s.s2)
                        + &d * (&one - &dt * &dt);
                    pre * br
                }
                -1 => {
                    let pre = int(2) * &nn * (&dt - &a + &nn) * (&dt - &b + &nn) * (&c + &nn)
                        * (&dt - &c + &nn - int(2))
                        * (&dt - &c + &nn)
                        / ((&dt + int(2 * n - 3)) * poch(&(&dt + int(2 * n - 1)), 3));
                    let br = -(int(2) * &kap * &nn * (&nn + &dt - &one))
                        + int(2) * (&one + &c - &s.s2)
                        + int(2) * (&s.s2 + &c - &dt) * &dt
                        + &d * (&one - &dt * &dt);
                    pre * br
                }
                _ => unreachable!(),
            }
        }
        Family::QR => {
            let q = lam.q().clone();
            let qn = powi(&q, n);
            let qq = |e: i64| powi(&q, e);
            let kap = &one - &s.t2 * qq(2) / &s.s2;
            let g = &s.s2 * &s.t1 + &s.s1 * (&one - &c) * &d * &q - &s.t1 * &d * qq(2);
            let h = &s.s1 * &s.s2 * &c + &s.s2 * (&one - &c) * &s.t1 * &q - &s.s1 * &s.t2 * qq(2);
            let qi = &q + &one / &q;
            match k {
                2 => {
                    &kap * (&one - &c * &qn) * (&one - &c * qq(n + 3))
                        * qpoch(&(&a * &qn), &q, 2)
                        * qpoch(&(&b * &qn), &q, 2)
                        * qpoch(&(&dt * &qn), &q, 2)
                        / qpoch(&(&dt * qq(2 * n)), &q, 4)
                }
                -2 => {
                    &d * &d * &q * &q * &kap * (&one - &dt * qq(n - 3) / &c) * (&one - &dt * &qn / &c)
                        * qpoch(&(&dt * qq(n - 1) / &a), &q, 2)
                        * qpoch(&(&dt * qq(n - 1) / &b), &q, 2)
                        * qpoch(&qq(n - 1), &q, 2)
                        / qpoch(&(&dt * qq(2 * n - 3)), &q, 4)
                }
                1 => {
                    let pre = (&one + &q) * (&one - &a * &qn) * (&one - &b * &qn) * (&one - &c * &qn)
                        * (&one - &c * qq(n + 2))
                        * (&one - &dt * &qn / &c)
                        * (&one - &dt * &qn)
                        / (&s.s2 * &d * (&one - &dt * qq(2 * n + 3)) * qpoch(&(&dt * qq(2 * n - 1)), &q, 3));
                    pre * (-(&g * (&s.s2 * &c * qq(2 * n) + &d)) + &qi * &d * &h * &qn)
                }
                -1 => {
                    let pre = (&one + &q) * (&one - &qn) * (&one - &dt * &qn / &a) * (&one - &dt * &qn / &b)
                        * (&one - &c * &qn)
                        * (&one - &dt * qq(n - 2) / &c)
                        * (&one - &dt * &qn / &c)
                        / (&s.s2 * (&one - &dt * qq(2 * n - 3)) * qpoch(&(&dt * qq(2 * n - 1)), &q, 3));
                    pre * (-(&g * (&s.s2 * &c * qq(2 * n - 1) + &d * &q)) + &qi * &d * &h * &qn)
                }
                _ => unreachable!(),
            }
        }
    }
}

pub fn ex1_points() -> Vec<ParameterSet> {
    vec![
        racah_generic(),
        ParameterSet::racah(frac(-41, 6), frac(13, 4), frac(5, 3), frac(3, 8)).unwrap(),
        ParameterSet::racah(frac(11, 2), frac(-7, 9), frac(2, 7), frac(9, 5)).unwrap(),
        qracah_generic(),
        ParameterSet::q_racah(frac(9, 4), frac(3, 11), frac(2, 7), frac(5, 13), frac(1, 3)).unwrap(),
        ParameterSet::q_racah(frac(5, 2), frac(4, 7), frac(1, 5), frac(2, 9), frac(2, 3)).unwrap(),
    ]
}

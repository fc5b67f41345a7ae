//! Field abstraction shared by the polynomial and matrix code.

use std::fmt::Debug;

use num_traits::Num;

use super::counter::tally;

/// Exact field element. Anything `Num + Clone` with a negation works; the
/// crate itself instantiates it with `BigRational`.
pub trait Scalar: Num + Clone + Debug + std::ops::Neg<Output = Self> {}

impl<T> Scalar for T where T: Num + Clone + Debug + std::ops::Neg<Output = T> {}

/// `x^k` by repeated squaring; negative `k` inverts first.
pub fn powi<T: Scalar>(x: &T, k: i64) -> T {
    let mut base = if k < 0 { T::one() / x.clone() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
            tally(1);
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
            tally(1);
        }
    }
    acc
}

/// Rising factorial `(a)_n = a(a+1)…(a+n-1)`.
pub fn rising<T: Scalar>(a: &T, n: usize) -> T {
    tally(n);
    let mut acc = T::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc = acc * t.clone();
        t = t + T::one();
    }
    acc
}

/// q-shifted factorial `(a;q)_n = ∏_{k<n} (1 - a q^k)`.
pub fn q_rising<T: Scalar>(a: &T, q: &T, n: usize) -> T {
    tally(2 * n);
    let mut acc = T::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc = acc * (T::one() - t.clone());
        t = t * q.clone();
    }
    acc
}

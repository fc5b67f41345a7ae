//! Newton-form interpolation.

use super::counter::tally;
use super::poly::DensePoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Incremental Newton interpolant. Nodes can be appended one at a time; the
/// divided-difference table is extended in `O(n)` per node.
#[derive(Clone, Debug)]
pub struct Newton<T> {
    nodes: Vec<T>,
    // diag[i] = f[x_0..x_i]; row holds the latest anti-diagonal f[x_i..x_n]
    diag: Vec<T>,
    row: Vec<T>,
}

impl<T: Scalar> Default for Newton<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Newton<T> {
    pub fn new() -> Self {
        Newton { nodes: Vec::new(), diag: Vec::new(), row: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn push(&mut self, x: T, y: T) -> Result<()> {
        if self.nodes.contains(&x) {
            return Err(Error::DuplicateNode);
        }
        let n = self.nodes.len();
        let mut new_row = Vec::with_capacity(n + 1);
        new_row.push(y);
        for j in 0..n {
            // f[x_{n-j-1} .. x_n]
            let num = new_row[j].clone() - self.row[j].clone();
            let den = x.clone() - self.nodes[n - j - 1].clone();
            new_row.push(num / den);
        }
        tally(n);
        self.diag.push(new_row[n].clone());
        self.row = new_row;
        self.nodes.push(x);
        Ok(())
    }

    /// Value of the current interpolant at `x`.
    pub fn eval(&self, x: &T) -> T {
        let n = self.nodes.len();
        tally(2 * n);
        let mut acc = T::zero();
        for i in (0..n).rev() {
            acc = acc * (x.clone() - self.nodes[i].clone()) + self.diag[i].clone();
        }
        acc
    }

    /// The interpolant in monomial form.
    pub fn to_poly(&self) -> DensePoly<T> {
        let n = self.nodes.len();
        // Horner in Newton basis, kept as a coefficient vector.
        let mut acc: Vec<T> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // acc <- acc * (x - x_i) + diag[i]
            let xi = self.nodes[i].clone();
            let mut next = vec![T::zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + a.clone();
                next[k] = next[k].clone() - a.clone() * xi.clone();
            }
            tally(acc.len());
            next[0] = next[0].clone() + self.diag[i].clone();
            acc = next;
        }
        DensePoly::new(acc)
    }
}

/// Incremental Thiele continued fraction
/// `c_0 + (x−x_0)/(c_1 + (x−x_1)/(c_2 + …))`.
#[derive(Clone, Debug)]
pub struct Thiele<T> {
    nodes: Vec<T>,
    coeffs: Vec<T>,
}

impl<T: Scalar> Default for Thiele<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Thiele<T> {
    pub fn new() -> Self {
        Thiele { nodes: Vec::new(), coeffs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Appends a node. Fails with `DuplicateNode` on a repeated abscissa and
    /// with `DegenerateGrid` when a reciprocal difference is infinite; the
    /// fraction is left unchanged in both cases.
    pub fn push(&mut self, x: T, y: T) -> Result<()> {
        if self.nodes.contains(&x) {
            return Err(Error::DuplicateNode);
        }
        let mut v = y;
        for (xj, cj) in self.nodes.iter().zip(&self.coeffs) {
            let diff = v - cj.clone();
            if diff.is_zero() {
                return Err(Error::DegenerateGrid("infinite reciprocal difference".into()));
            }
            v = (x.clone() - xj.clone()) / diff;
        }
        tally(2 * self.nodes.len());
        self.nodes.push(x);
        self.coeffs.push(v);
        Ok(())
    }

    /// Value at `x`; `None` at a pole of the fraction.
    pub fn eval(&self, x: &T) -> Option<T> {
        let mut acc = self.coeffs.last()?.clone();
        for i in (0..self.nodes.len() - 1).rev() {
            if acc.is_zero() {
                return None;
            }
            acc = self.coeffs[i].clone() + (x.clone() - self.nodes[i].clone()) / acc;
        }
        tally(self.nodes.len());
        Some(acc)
    }

    /// `(numerator, denominator)` in lowest terms with monic denominator.
    pub fn to_rational(&self) -> Option<(DensePoly<T>, DensePoly<T>)> {
        let mut num = DensePoly::constant(self.coeffs.last()?.clone());
        let mut den = DensePoly::one();
        for i in (0..self.nodes.len() - 1).rev() {
            let lin = DensePoly::new(vec![-self.nodes[i].clone(), T::one()]);
            let next = &num.scale(&self.coeffs[i]) + &(&lin * &den);
            den = num;
            num = next;
        }
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let num = num.divrem_ordinary(&g).0;
        let den = den.divrem_ordinary(&g).0;
        let inv = T::one() / den.lead()?.clone();
        Some((num.scale(&inv), den.scale(&inv)))
    }
}

/// Unique polynomial of degree `< points.len()` through `points`.
pub fn interpolate<T: Scalar>(points: &[(T, T)]) -> Result<DensePoly<T>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("interpolation needs at least one node".into()));
    }
    let mut nw = Newton::new();
    for (x, y) in points {
        nw.push(x.clone(), y.clone())?;
    }
    Ok(nw.to_poly())
}

/// Rational function `num/den` through `points`, found by the extended
/// Euclidean algorithm on the interpolant. Returns the first candidate with
/// `deg num + deg den + 1 + spare <= points.len()` that matches every point,
/// in lowest terms with `den` monic; `None` when no candidate fits the budget.
pub fn reconstruct_rational<T: Scalar>(
    points: &[(T, T)],
    spare: usize,
) -> Result<Option<(DensePoly<T>, DensePoly<T>)>> {
    let m = points.len();
    if m <= spare {
        return Ok(None);
    }
    let f = interpolate(points)?;
    let mut modulus = DensePoly::one();
    for (x, _) in points {
        modulus = &modulus * &DensePoly::linear(-x.clone());
    }
    let (mut r0, mut r1) = (modulus, f);
    let (mut t0, mut t1) = (DensePoly::zero(), DensePoly::one());
    loop {
        if !t1.is_zero() && fits(&r1, &t1, points, spare) {
            let g = r1.gcd(&t1);
            let num = r1.divrem(&g)?.0;
            let den = t1.divrem(&g)?.0;
            let l = den.lead().cloned().expect("nonzero denominator");
            let inv = T::one() / l;
            return Ok(Some((num.scale(&inv), den.scale(&inv))));
        }
        if r1.is_zero() {
            return Ok(None);
        }
        let (q, r) = r0.divrem(&r1)?;
        let t = &t0 - &(&q * &t1);
        // keep remainders monic to limit coefficient growth
        let (r, t) = match r.lead().cloned() {
            Some(l) => {
                let inv = T::one() / l;
                (r.scale(&inv), t.scale(&inv))
            }
            None => (r, t),
        };
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
}

fn fits<T: Scalar>(num: &DensePoly<T>, den: &DensePoly<T>, points: &[(T, T)], spare: usize) -> bool {
    let dn = num.degree().map_or(0, |d| d as usize);
    let dd = den.degree().map_or(0, |d| d as usize);
    if dn + dd + 1 + spare > points.len() {
        return false;
    }
    points.iter().all(|(x, y)| {
        let v = den.eval(x);
        !v.is_zero() && num.eval(x) == y.clone() * v
    })
}

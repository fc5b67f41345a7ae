//! Dense row-major matrices with fraction-free elimination.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::counter::tally;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        tally(self.data.len());
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        tally(self.data.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = m[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m[(i, j)].clone() * pivot.clone() - m[(i, k)].clone() * m[(k, j)].clone())
                        / prev.clone();
                    m[(i, j)] = v;
                }
            }
            tally(3 * (n - k - 1) * (n - k - 1));
            prev = pivot;
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        Self::eliminate(&mut m, self.cols).0
    }

    // Bareiss forward elimination on the first `pivot_cols` columns. Returns
    // the rank and the pivot column of each pivot row.
    fn eliminate(m: &mut Self, pivot_cols: usize) -> (usize, Vec<usize>) {
        let mut r = 0;
        let mut prev = T::one();
        let mut pivots = Vec::new();
        for k in 0..pivot_cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, k)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let pivot = m[(r, k)].clone();
            for i in r + 1..m.rows {
                let f = m[(i, k)].clone();
                for j in 0..m.cols {
                    let v = (m[(i, j)].clone() * pivot.clone() - f.clone() * m[(r, j)].clone()) / prev.clone();
                    m[(i, j)] = v;
                }
            }
            tally(3 * (m.rows - r - 1) * m.cols);
            prev = pivot;
            pivots.push(k);
            r += 1;
        }
        (r, pivots)
    }

    /// Solves `self · X = rhs` for square nonsingular `self`.
    pub fn solve_many(&self, rhs: &Self) -> Result<Self> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "dimension mismatch");
        let n = self.rows;
        let m = rhs.cols;
        let mut aug = Self::from_fn(n, n + m, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        let (rank, _) = Self::eliminate(&mut aug, n);
        if rank < n {
            return Err(Error::SingularSystem { rank });
        }
        let mut x = Self::zeros(n, m);
        for c in 0..m {
            for i in (0..n).rev() {
                let mut s = aug[(i, n + c)].clone();
                for j in i + 1..n {
                    s = s - aug[(i, j)].clone() * x[(j, c)].clone();
                }
                x[(i, c)] = s / aug[(i, i)].clone();
            }
        }
        tally(m * n * (n + 1) / 2);
        Ok(x)
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let rhs = Self::from_columns(&[b.to_vec()]);
        Ok(self.solve_many(&rhs)?.column(0))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve_many(&Self::identity(self.rows))
    }

    /// `self·b − b·self`.
    pub fn commutator(&self, b: &Self) -> Self {
        &(self * b) - &(b * self)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn mul(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: DenseMatrix<T> = DenseMatrix::zeros(self.rows, rhs.cols);
        let mut count = 0;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    count += 1;
                }
            }
        }
        tally(count);
        out
    }
}

impl<T: Scalar> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn add(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn sub(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

use num_traits::Zero;

use super::ParameterSet;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::{Matrix, Poly, Rational};

/// Values on the grid `x = 0..=x_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFunction {
    pub values: Vec<Rational>,
}

impl GridFunction {
    pub fn x_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// `B`, `D` and their twisted versions at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potentials {
    pub b: Rational,
    pub d: Rational,
    pub bp: Rational,
    pub dp: Rational,
}

impl ParameterSet {
    pub fn potentials(&self, x: i64) -> Result<Potentials> {
        let t = self.twist();
        Ok(Potentials { b: self.pot_b(x)?, d: self.pot_d(x)?, bp: t.pot_b(x)?, dp: t.pot_d(x)? })
    }

    pub(crate) fn require_size(&self) -> Result<usize> {
        self.size()
            .map(|n| n as usize)
            .ok_or_else(|| Error::InvalidParameters("operation needs a finite system".into()))
    }

    /// `φ₀(x)²` on the grid and `d_n²` for `n = 0..=N`; both must be
    /// positive.
    pub fn weight_and_norm(&self) -> Result<(GridFunction, Vec<Rational>)> {
        let n = self.require_size()?;
        let w = (0..=n).map(|x| self.phi0_sq(x)).collect::<Result<Vec<_>>>()?;
        let d = (0..=n).map(|k| self.norm_sq(k)).collect::<Result<Vec<_>>>()?;
        let zero = Rational::zero();
        if let Some(x) = w.iter().position(|v| *v <= zero) {
            return Err(Error::InvariantViolation(format!("φ₀({x})² is not positive")));
        }
        if let Some(k) = d.iter().position(|v| *v <= zero) {
            return Err(Error::InvariantViolation(format!("d_{k}² is not positive")));
        }
        Ok((GridFunction { values: w }, d))
    }

    /// Values `p(η(x; λ + shift·δ))` for `x = 0..=x_max`.
    pub fn sample(&self, p: &Poly, shift: i64, x_max: usize) -> GridFunction {
        GridFunction { values: (0..=x_max as i64).map(|x| p.eval(&self.eta_at(x, shift))).collect() }
    }

    /// Tridiagonal matrix of `B(x)(1 - e^∂) + D(x)(1 - e^{-∂})` on `0..=N`.
    pub fn hamiltonian(&self) -> Result<Matrix> {
        let n = self.require_size()?;
        let b = (0..=n as i64).map(|x| self.pot_b(x)).collect::<Result<Vec<_>>>()?;
        let d = (0..=n as i64).map(|x| self.pot_d(x)).collect::<Result<Vec<_>>>()?;
        Ok(tridiagonal(&b, &d))
    }

    /// Eigen-equation and orthogonality of `P_0..P_N` on the grid, plus the
    /// three-term relation and leading coefficients.
    pub fn verify_base(&self) -> Result<Report> {
        let n = self.require_size()?;
        let mut rep = Report::new();
        let polys = self.racah_polys(n)?;
        let eta = Poly::x();
        let mut ttrr = None;
        for k in 0..n {
            let (a, b, c) = self.ttrc(k as i64)?;
            let prev = if k == 0 { Poly::zero() } else { polys[k - 1].clone() };
            let rhs = &(&polys[k + 1].scale(&a) + &polys[k].scale(&b)) + &prev.scale(&c);
            if &eta * &polys[k] != rhs {
                ttrr = Some(format!("n={k}"));
                break;
            }
        }
        rep.record("base.three_term", ttrr);
        let lead = (0..=n).find(|&k| polys[k].lead() != Some(&self.lead_c(k)) || polys[k].degree() != Some(k as i64));
        rep.record("base.leading_coefficient", lead.map(|k| format!("n={k}")));

        let h = self.hamiltonian()?;
        let samples: Vec<GridFunction> = polys.iter().map(|p| self.sample(p, 0, n)).collect();
        let mut eig = None;
        for (k, s) in samples.iter().enumerate() {
            let hv = h.mul_vec(&s.values);
            let e = self.energy(k as i64);
            if let Some(x) = (0..=n).find(|&x| hv[x] != &e * &s.values[x]) {
                eig = Some(format!("n={k}, x={x}"));
                break;
            }
        }
        rep.record("base.eigen_equation", eig);

        let (w, d2) = self.weight_and_norm()?;
        let mut orth = None;
        'outer: for i in 0..=n {
            for j in i..=n {
                let s: Rational = (0..=n)
                    .map(|x| &w.values[x] * &samples[i].values[x] * &samples[j].values[x])
                    .sum();
                let expect = if i == j { Rational::from_integer(1.into()) / &d2[i] } else { Rational::zero() };
                if s != expect {
                    orth = Some(format!("(n,m)=({i},{j})"));
                    break 'outer;
                }
            }
        }
        rep.record("base.orthogonality", orth);
        Ok(rep)
    }
}

/// `H = B(x)(1 - e^∂) + D(x)(1 - e^{-∂})` with given `B`, `D` samples.
pub(crate) fn tridiagonal(b: &[Rational], d: &[Rational]) -> Matrix {
    let n = b.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            &b[i] + &d[i]
        } else if j == i + 1 {
            -b[i].clone()
        } else if i == j + 1 {
            -d[i].clone()
        } else {
            Rational::zero()
        }
    })
}

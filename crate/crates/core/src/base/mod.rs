//! Classical Racah (R) and q-Racah (qR) data in the parametrization
//! `λ = (a, b, c, d)`, with `a = q^{λ₁}` etc. for qR.

mod grid;
mod params;

pub use grid::{GridFunction, Potentials};
pub use params::{Family, ParameterSet};

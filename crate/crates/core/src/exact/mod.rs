//! Exact arithmetic primitives: the [`Scalar`] field trait, dense
//! (Laurent) polynomials, Newton interpolation and fraction-free linear
//! algebra. Everything here is generic over the field.

mod counter;
mod interp;
mod matrix;
mod poly;
mod scalar;

pub use counter::{count_muls, mul_count, reset_mul_count};
pub use interp::{interpolate, reconstruct_rational, Newton, Thiele};
pub use matrix::DenseMatrix;
pub use poly::DensePoly;
pub use scalar::{powi, q_rising, rising, Scalar};

pub use counter::tally;

//! Exact construction of multi-indexed Racah and q-Racah polynomials and
//! verification of their recurrence relations, closure relations and the
//! correspondence with multi-indexed Wilson / Askey-Wilson polynomials.
//!
//! The arithmetic layer in [`exact`] is generic over the field; the domain
//! modules work over [`Rational`] through the aliases below.

pub mod error;
pub mod exact;
pub mod base;
pub mod bridge;
pub mod closure;
pub mod multi;
pub mod rational;
pub mod recconst;
pub mod recvar;
pub mod report;

pub use error::{Error, Result};

/// Arbitrary precision rational, always reduced.
pub type Rational = num_rational::BigRational;
/// Dense (Laurent) polynomial over [`Rational`].
pub type Poly = exact::DensePoly<Rational>;
/// Dense matrix over [`Rational`].
pub type Matrix = exact::DenseMatrix<Rational>;

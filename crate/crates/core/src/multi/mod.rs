//! Multi-indexed (q-)Racah polynomials: denominator polynomials `Ξ_D`,
//! eigenpolynomials `P_{D,n}`, the deformed difference operator and norms.

mod consts;
mod deformed;
mod family;
mod index;

pub use consts::{c_d, c_dn, d_tilde_dn_sq, lead_p, lead_xi};
pub use deformed::{deformed, verify_family, Deformed};
pub use family::{casoratian, p_dn, xi_d, MultiIndexedFamily};
pub use index::IndexSet;

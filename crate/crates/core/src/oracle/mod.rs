//! Independent models of `A*(M)` used to cross-check the closed forms.

mod fy;
mod graded;
pub mod linalg;
mod pairing;
mod straighten;

pub use fy::{delta_order, fy_basis, reduce_to_fy, FYBasisElement};
pub use graded::{build_graded, oracle_degree, ChowPoly, GradedPiece, Oracle, DEFAULT_MONOMIAL_CAP};
pub use pairing::{
    pairing_matrix, pairing_matrix_with, verify_poincare, PairingCertificate, PairingOptions,
};
pub use straighten::{straighten_degree, Straightener};

//! Level-one vertex-operator realization of the quantum affine algebra
//! `U_q(C_n^(1))` over exact scalars, together with a verifier for its
//! defining relations.

pub mod error;
pub mod fock;
pub mod lattice;
pub mod qscalar;
pub mod qseries;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
pub use qscalar::{ExactScalar, HalfExponent};

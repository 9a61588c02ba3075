//! Binary forms, plethysm and wedge bases with their sl2 action, q-characters,
//! and highest-weight scalars of equivariant maps.

pub mod form;
pub mod hw;
pub mod plethysm;
pub mod qchar;

pub use form::{transvectant_omega, BinaryForm};
pub use hw::{classical_hermite_triple_24, hw_triple, hw_vectors_2_2};
pub use plethysm::{PlethysmBasis, WedgeBasis};
pub use qchar::{char_identity_check, char_identity_sides, q_binomial, q_factorial, q_int, QChar};

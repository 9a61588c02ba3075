//! Polynomials over the rationals, graded ideals, Hilbert functions, and
//! monomial initial ideals.

pub mod ideal;
pub mod monomial;
pub mod monomial_ideal;
pub mod poly;

pub use ideal::{maximal_power, GradedIdeal, GradedPiece};
pub use monomial::{grevlex_cmp, grlex_cmp, Monomial, MonomialBasis, TermOrder};
pub use monomial_ideal::{initial_ideal_jab, MonomialIdeal};
pub use poly::{MultiPoly, PolyJson, PolyRing, TermJson};

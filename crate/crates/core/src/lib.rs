//! Exact computations around powers of binary forms.
//!
//! The crate builds the Foulkes–Howe restriction maps
//! `Sym^k(Sym^{ab} U) -> Sym^{ak}(Sym^b U)`, the Jacobian matrix of linear
//! forms whose maximal minors cut out the locus of `a`-th powers of binary
//! forms of degree `b`, the power ideals `I_{a,b}` together with their
//! monomial initial ideals, and computes graded Betti numbers through Koszul
//! homology. All linear algebra is over `Q` or a large prime field.
//!
//! Every space in sight carries a torus weight (the `x2`-degree of the
//! underlying binary forms), and all maps preserve it, so ranks are computed
//! block by block over weight spaces.

pub mod cache;
pub mod error;
pub mod exactalg;
pub mod fhmaps;
pub mod homres;
pub mod polyring;
pub mod report;
pub mod repro;
pub mod session;
pub mod sl2rep;

pub use error::{Error, Result};
pub use report::Status;
pub use session::Session;

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

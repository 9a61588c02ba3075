//! Exact numeric kernel: rationals, prime fields, sparse matrices, and
//! elimination with exact or double-prime modular rank.

pub mod format;
pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use format::{read_matrix, write_matrix};
pub use linalg::{
    annihilates, echelon_rank, exact_rank, fraction_free_rank, is_primitive, kernel_basis, rank,
    rank_of_rows, rref, Echelon, Provenance, RankConfig, RankMode, RankOutcome, Rref,
};
pub use matrix::{ExactMatrix, Matrix, PrimeMatrix, SparseVec, Storage};
pub use scalar::{binom, binomial, format_rational, int, parse_rational, rat, Field, Fp, Rational};

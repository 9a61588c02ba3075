//! Graded Betti numbers through Koszul homology, regularity, Hilbert-series
//! numerators, and exactness of explicit graded complexes.

pub mod assemble;
pub mod betti;
pub mod complex;
pub mod koszul;
pub mod module;
pub mod numerator;
pub mod verify;

pub use assemble::{phi_resolution, phi_resolution_report};
pub use complex::{koszul_complex, presentation, resolve, ComplexReport, ExactnessReport, ExplicitComplex, Generator, HomologyEntry};
pub use betti::{BettiEntry, BettiTable, RowConvention};
pub use koszul::{euler_mismatches, koszul_images, koszul_rank, subsets, tor_betti};
pub use module::{coordinate_ring_b, quotient_module, ModuleData, ModulePiece};
pub use numerator::{binom_i, hilbert_numerator, ix_hilbert_function};
pub use verify::{
    artinian_betti, coker_hilbert, conjecture_scan, explicit_beta, generators_match, ia3_expected, iab_ideal, ix_betti,
    ix_numerator, power_b_is_full, power_betti, power_regularity_prediction, power_strands, regularity_formula,
    regularity_report, verify_explicit_betti, verify_ia3_resolution, verify_power_betti, CokerReport, ConjectureScan,
    EntryCheck, ExplicitBettiReport, Ia3Report, PowerBettiReport, RegularityReport, ScanRow, ScanStatus,
};

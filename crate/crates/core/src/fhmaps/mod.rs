//! Power generators, Foulkes–Howe maps, the Jacobian matrix of linear forms
//! and its minors, the linear syzygy matrix of the power generators, and term
//! data of the associated symmetric and exterior power complexes.

pub mod foulkes;
pub mod generators;
pub mod omega;
pub mod phi;
pub mod srwr;

pub use foulkes::{fh_rank_report, foulkes_howe, foulkes_howe_with, FhRankReport, FoulkesHoweMatrix};
pub use generators::{power_generators, power_generators_with, Normalization, PowerGenerators};
pub use omega::{
    genericity_check, maximal_minors, minors_generate_check, omega_matrix, omega_rank_at, GenericityReport,
    LinearFormMatrix, MinorsReport,
};
pub use phi::{phi_matrix, PhiMatrix};
pub use srwr::{sr_wr_terms, sr_wr_terms_general, SrWrTerms, Term};

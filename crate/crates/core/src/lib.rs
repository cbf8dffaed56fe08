//! Parabolic structure on the direct image of the structure sheaf under a
//! branched cover of curves, computed from monodromy data.
//!
//! A cover is given combinatorially by a [`CoverDatum`]: handle pairs and
//! local monodromies around branch points. From it the crate derives the
//! weight systems of `(f_* O_X)_*` and of its trace-free summand `E_*`,
//! checks the degree identities exactly, and classifies `E_*` as stable,
//! not stable, or undetermined with explicit certificates.

pub mod cover;
pub mod directimage;
pub mod error;
pub mod format;
pub mod perm;
pub mod group;
pub mod hurwitz;
pub mod parabolic;
pub mod rational;
pub mod report;
pub mod stability;

pub use error::{Error, Result};
pub use group::{BlockSystem, GeneratedGroup, GroupClass};
pub use perm::Perm;
pub use parabolic::{ParabolicData, Preimage, PullbackProfile, WeightSystem};
pub use rational::Rational;
pub use cover::{BranchPoint, CoverDatum, ValidationReport, Violation, ViolationKind};
pub use directimage::{
    check_degree_zero, closure_trivialization_check, pushforward_parabolic, summand_e,
};
pub use stability::{analyze, is_v_irreducible, Certificate, StabilityReport, Verdict};
pub use hurwitz::{enumerate_hurwitz, EnumerationCaps};
pub use format::{cover_to_json, parse_cover, CoverFile};
pub use report::{build_report, census, pullback_report, AnalysisOptions, AnalysisReport};

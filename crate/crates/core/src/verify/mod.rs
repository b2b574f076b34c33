//! Certificates for the facts behind the free subgroup of the full group.
//!
//! Everything here is checked by evaluating `λ`; nothing is assumed from the
//! construction beyond what is recomputed.

mod aperiodic;
mod free;
mod homogeneity;
mod witness;

pub use aperiodic::{period_breaker, separating_edge, verify_aperiodicity, AperiodicityCertificate};
pub use free::{free_subgroup_certificates, verify_free_subgroup, FreeSubgroupSummary};
pub use homogeneity::{
    homogeneity_report, homogeneity_report_with_limits, recurrence_radius, validate_homogeneity, EdgePattern,
    HomogeneityLimits, HomogeneityReport, HomogeneityValidation,
};
pub use witness::{
    find_witness, is_occurrence_base, validate_certificate, verify_nontrivial_action, witness_bound, WitnessCertificate,
};

//! Verification of the defining relations, the combinatorial identities and
//! the highest weight vectors.

pub mod identities;
pub mod poly;
pub mod relations;
pub mod report;

pub use identities::{
    check_all_identities, check_identity1, check_identity2, check_identity3, check_ope_factors, check_qpow,
    identity2_display_residual,
};
pub use poly::{MultiPoly, Var};
pub use relations::{
    default_test_vectors, fundamental_vector, verify_hwv, verify_lemma, verify_r2, verify_r4, verify_r5, verify_r6,
    verify_r7, verify_r8, verify_relations, verify_serre, verify_sub_serre, CheckConfig, Relation, Verifier,
};
pub use report::{CheckRecord, Status, Summary, VerificationReport};

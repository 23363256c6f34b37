// SPDX-License-Identifier: Apache-2.0

//! Autotopisms `(X, Y)` of the spread set with `X C Y^{-1} = C`.
//!
//! Every element is a pair of block-monomial maps
//! `(x, y) ↦ S · (x^(p^i), y^(p^i))` with `X` diagonal and `Y` diagonal or
//! antidiagonal. Products are taken componentwise.

mod construct;
mod enumerate;
mod mono;
mod oracle;
mod structure;

pub use construct::{
    admissible_indices, compose_autotopisms, construct_antidiagonal, construct_diagonal,
    delta_factorizations, invert_autotopism, verify_autotopism, verify_pair, Admissible,
    Autotopism, Construction, Verification,
};
pub use mono::BlockMonomial;
pub use enumerate::{
    enumerate_family, enumerate_group, enumerate_group_with, family_size, FamilyStats,
    GroupInventory, InventorySummary, VerifyPolicy,
};
pub use structure::{
    invariant_factors_of, nucleus_embedding, semilinearity_checks, structure_report,
    EmbeddingReport, LogElem, LogGroup, StructureReport,
};
pub use oracle::{ansatz_exhaustive_oracle, OracleReport, MAX_ORACLE_FIELD};

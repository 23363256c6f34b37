// SPDX-License-Identifier: Apache-2.0

//! The commutative presemifield on `M × M` with multiplication
//!
//! ```text
//! (x, y) ∘ (u, v) = (x^q u + x u^q + B(y^q v + y v^q),
//!                    x^r v + A x v^r + A y^r u + y u^r)
//! ```
//!
//! for a non-square `B` and `AB ∈ F_Q^×`, together with its spread set
//! `C = {R_{u,v}}` and the generic presemifield machinery.

mod params;
mod presemifield;
mod spread;

pub use params::{GkParams, GroupCase, ParamsConfig};
pub use presemifield::Presemifield;
pub use spread::{
    check_s3, gk_multiply, gk_multiply_variant, spread_matrix, spread_matrix_with, MulFn, S3Policy,
    S3Report, SpreadSet, SpreadSetExport,
};

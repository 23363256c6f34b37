// SPDX-License-Identifier: Apache-2.0

//! A family of commutative presemifields on `F_{p^m} × F_{p^m}` built from
//! a q-binomial and an r-binomial, with their spread sets, nuclei and
//! autotopism groups.
//!
//! * [`gf`]: finite-field tower arithmetic and power-class predicates
//! * [`linmap`]: linearized polynomials and matrices over `F_p`
//! * [`semifield`]: the presemifield, its spread set and membership solver
//! * [`nuclei`]: middle and right nuclei by linear algebra
//! * [`autotopism`]: construction, enumeration, verification and structure
//! * [`cli`]: the `gksf` command-line driver

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod gf;
pub mod linmap;
pub mod semifield;
pub mod nuclei;
pub mod autotopism;
pub mod par;
pub mod cli;

pub use error::{Error, Result};

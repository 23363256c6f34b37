// SPDX-License-Identifier: Apache-2.0

//! Exhaustive search for monomial autotopisms of one index and form.
//!
//! Comparing coefficients of `X ∘ R_{1,1} = R_{w,t} ∘ Y` gives eight scalar
//! equations. Two of them force `a_1` up to a `(q-1)`-st root, and the
//! images `w`, `t` and the remaining scalar then follow. Candidates that
//! satisfy all eight are checked against the whole spread set.

use serde::{Deserialize, Serialize};

use super::construct::{verify_pair, Autotopism};
use super::mono::BlockMonomial;
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower};
use crate::linmap::Form;
use crate::par::{self, Exec};
use crate::semifield::SpreadSet;

/// Largest field `M` swept in full.
pub const MAX_ORACLE_FIELD: u128 = 729;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub i: usize,
    pub form: Form,
    /// Pairs of free scalars swept.
    pub swept: u64,
    /// Candidates passing the eight coefficient equations.
    pub candidates: u64,
    pub verified: u64,
}

struct Ctx<'a> {
    t: &'a FieldTower,
    a: FieldElem,
    b: FieldElem,
    a_i: FieldElem,
    b_i: FieldElem,
    i: usize,
}

impl Ctx<'_> {
    fn q(&self, x: &FieldElem) -> FieldElem {
        self.t.frobenius(x, self.t.k() as i64)
    }

    fn r(&self, x: &FieldElem) -> FieldElem {
        self.t.frobenius(x, self.t.r_degree() as i64)
    }

    fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.t.mul(x, y)
    }

    fn div(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.t.div(x, y).expect("units")
    }

    /// Diagonal candidates for `Y = diag(a_2, d_2)`.
    fn diagonal(&self, a2: &FieldElem, d2: &FieldElem, roots: &[FieldElem]) -> Vec<Autotopism> {
        let mut out = Vec::new();
        for a1 in roots {
            let w = self.div(a1, &self.q(a2));
            let d1 = self.mul(d2, &self.r(&w));
            let t = self.div(&d1, &self.r(a2));
            let lhs_b = self.mul(a1, &self.b_i);
            let lhs_a = self.mul(&d1, &self.a_i);
            let ok = *a1 == self.mul(a2, &self.q(&w))
                && lhs_b == self.mul(&self.b, &self.mul(&self.q(d2), &t))
                && lhs_b == self.mul(&self.b, &self.mul(d2, &self.q(&t)))
                && lhs_a == self.mul(&self.a, &self.mul(a2, &self.r(&t)))
                && lhs_a == self.mul(&self.a, &self.mul(&self.r(d2), &w));
            if ok {
                out.push(Autotopism::new(
                    BlockMonomial::diagonal(self.i, *a1, d1),
                    BlockMonomial::diagonal(self.i, *a2, *d2),
                ));
            }
        }
        out
    }

    /// Antidiagonal candidates for `Y = antidiag(b_2, c_2)`.
    fn antidiagonal(&self, b2: &FieldElem, c2: &FieldElem, roots: &[FieldElem]) -> Vec<Autotopism> {
        let mut out = Vec::new();
        for a1 in roots {
            let t = self.div(a1, &self.mul(&self.b, &self.q(c2)));
            let d1 = self.mul(&self.a, &self.mul(b2, &self.r(&t)));
            let w = self.div(&d1, &self.mul(&self.a, &self.r(c2)));
            let lhs_b = self.mul(a1, &self.b_i);
            let lhs_a = self.mul(&d1, &self.a_i);
            let ok = *a1 == self.mul(&self.b, &self.mul(c2, &self.q(&t)))
                && lhs_b == self.mul(&self.q(b2), &w)
                && lhs_b == self.mul(b2, &self.q(&w))
                && lhs_a == self.mul(c2, &self.r(&w))
                && lhs_a == self.mul(&self.r(b2), &t);
            if ok {
                out.push(Autotopism::new(
                    BlockMonomial::diagonal(self.i, *a1, d1),
                    BlockMonomial::antidiagonal(self.i, *b2, *c2),
                ));
            }
        }
        out
    }
}

/// Every verified monomial autotopism with index `i` and the given form of
/// `Y`, sorted.
pub fn ansatz_exhaustive_oracle(
    set: &SpreadSet,
    i: usize,
    form: Form,
    exec: Exec,
) -> Result<(Vec<Autotopism>, OracleReport)> {
    let params = set.params();
    let t = params.tower();
    if t.size() > MAX_ORACLE_FIELD {
        return Err(Error::ScaleTooLarge(format!("oracle sweep over a field of size {}", t.size())));
    }
    if i >= t.m() {
        return Err(Error::NonAdmissible { i, form: form.name() });
    }
    let ctx = Ctx {
        t,
        a: params.a(),
        b: params.b(),
        a_i: t.frobenius(&params.a(), i as i64),
        b_i: t.frobenius(&params.b(), i as i64),
        i,
    };
    let units = t.units();
    let q = t.q();
    let per_first = par::map_slice(exec, &units, |first| {
        // a_1^(q-1) = a_2^(q^2-1), or B^(q-1) c_2^(q^2-1) in the mirror case
        let target = match form {
            Form::Diagonal => t.pow_big(first, q * q - 1),
            Form::Antidiagonal => t.mul(&t.pow_big(&ctx.b, q - 1), &t.pow_big(first, q * q - 1)),
        };
        let roots = t.roots_of_power_equation(&target, q - 1).expect("unit");
        let mut found = Vec::new();
        for second in &units {
            found.extend(match form {
                Form::Diagonal => ctx.diagonal(first, second, &roots),
                // sweep c_2 in the outer loop so the roots depend on it only
                Form::Antidiagonal => ctx.antidiagonal(second, first, &roots),
            });
        }
        found
    });
    let candidates: Vec<Autotopism> = per_first.into_iter().flatten().collect();
    let checks = par::map_slice(exec, &candidates, |a| verify_pair(set, a));
    let mut verified: Vec<Autotopism> =
        candidates.iter().zip(&checks).filter(|(_, ok)| **ok).map(|(a, _)| a.clone()).collect();
    verified.sort();
    verified.dedup();
    let report = OracleReport {
        i,
        form,
        swept: (units.len() * units.len()) as u64,
        candidates: candidates.len() as u64,
        verified: verified.len() as u64,
    };
    Ok((verified, report))
}

// SPDX-License-Identifier: Apache-2.0

//! Middle and right nuclei of a spread set, solved as null spaces over `F_p`.
//!
//! Writing `ann(C)` for the annihilator of `C` under the trace pairing, the
//! middle nucleus is `{Y : <a, c Y> = 0 for a ∈ ann(C), c ∈ basis}` and the
//! right nucleus is the same with `X c`. Both conditions are linear in the
//! unknown matrix.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::numth::ipow;
use crate::gf::FieldElem;
use crate::linmap::{LinPoly, MatFp};
use crate::par::{self, Exec};
use crate::semifield::{GkParams, SpreadSet};

/// Largest solution space enumerated element by element.
const MAX_ENUMERATED: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Middle,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Middle => "middle",
            Side::Right => "right",
        }
    }
}

/// Solution space of a nucleus condition.
#[derive(Debug, Clone)]
pub struct Nucleus {
    pub side: Side,
    pub p: u32,
    /// `F_p`-basis of the solution space.
    pub basis: Vec<MatFp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleusReport {
    pub side: Side,
    pub dimension: usize,
    pub unit_count: u128,
    pub is_field: bool,
    /// `s` with field size `p^s`, when the space is a field.
    pub field_degree: Option<usize>,
    pub field_size: Option<u128>,
    pub generator: Option<MatFp>,
    pub generator_order: Option<u128>,
    pub predicted_degree: usize,
    /// The solution space equals [`nucleus_predicted`].
    #[serde(rename = "match")]
    pub matches: bool,
    /// The solution space equals [`nucleus_twisted`].
    #[serde(rename = "match_twisted")]
    pub matches_twisted: bool,
}

fn annihilator(set: &SpreadSet) -> Vec<MatFp> {
    let n = set.n();
    let p = set.params().tower().p() as u32;
    let rows: Vec<Vec<u32>> = set
        .basis()
        .iter()
        .map(|b| b.data().iter().map(|&c| c as u32).collect())
        .collect();
    MatFp::from_rows(p, &rows)
        .kernel()
        .into_iter()
        .map(|v| MatFp::from_flat(n, n, p, v.into_iter().map(|c| c as u16).collect()))
        .collect()
}

/// Solves the nucleus condition on `side` by linear algebra.
pub fn solve_nucleus(set: &SpreadSet, side: Side, exec: Exec) -> Nucleus {
    let n = set.n();
    let p = set.params().tower().p() as u32;
    let ann = annihilator(set);
    let basis = set.basis();
    let blocks = par::map_slice(exec, basis, |c| {
        let ct = c.transpose();
        ann.iter()
            .map(|a| {
                let row = match side {
                    Side::Middle => ct.mul(a),
                    Side::Right => a.mul(&ct),
                };
                row.data().iter().map(|&x| x as u32).collect::<Vec<u32>>()
            })
            .collect::<Vec<_>>()
    });
    let rows: Vec<Vec<u32>> = blocks.into_iter().flatten().collect();
    let system = MatFp::from_rows(p, &rows);
    let basis = system
        .kernel()
        .into_iter()
        .map(|v| MatFp::from_flat(n, n, p, v.into_iter().map(|c| c as u16).collect()))
        .collect();
    Nucleus { side, p, basis }
}

pub fn middle_nucleus(set: &SpreadSet) -> Nucleus {
    solve_nucleus(set, Side::Middle, Exec::default())
}

pub fn right_nucleus(set: &SpreadSet) -> Nucleus {
    solve_nucleus(set, Side::Right, Exec::default())
}

impl Nucleus {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Every element of the span, in coordinate order.
    pub fn elements(&self) -> Result<Vec<MatFp>> {
        let dim = self.dimension();
        let total = ipow(self.p as u128, dim as u32);
        if total > MAX_ENUMERATED {
            return Err(Error::ScaleTooLarge(format!("nucleus of dimension {dim}")));
        }
        let n = self.basis.first().map_or(0, |b| b.rows());
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut mat = MatFp::zeros(n, n, self.p);
            let mut rest = idx;
            for b in &self.basis {
                let c = (rest % self.p as u128) as u32;
                rest /= self.p as u128;
                if c != 0 {
                    mat.add_scaled_assign(c, b);
                }
            }
            out.push(mat);
        }
        Ok(out)
    }

    /// Closed under products and all nonzero elements invertible.
    pub fn is_field(&self) -> Result<bool> {
        let elems = self.elements()?;
        let set: BTreeSet<&MatFp> = elems.iter().collect();
        for a in &self.basis {
            for b in &self.basis {
                if !set.contains(&a.mul(b)) {
                    return Ok(false);
                }
            }
        }
        Ok(elems.iter().filter(|m| !m.is_zero()).all(|m| m.is_invertible()))
    }

    pub fn report(&self, params: &GkParams) -> Result<NucleusReport> {
        let elems = self.elements()?;
        let units: Vec<&MatFp> = elems.iter().filter(|m| m.is_invertible()).collect();
        let unit_count = units.len() as u128;
        let is_field = self.is_field()?;
        let dim = self.dimension();
        let (field_degree, field_size) = if is_field && unit_count + 1 == ipow(self.p as u128, dim as u32) {
            (Some(dim), Some(unit_count + 1))
        } else {
            (None, None)
        };
        let (generator, generator_order) = if is_field && unit_count > 0 {
            let best = units
                .iter()
                .map(|u| (matrix_order(u, unit_count), *u))
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
                .expect("nonempty");
            (Some(best.1.clone()), Some(best.0))
        } else {
            (None, None)
        };
        let predicted_degree = predicted_degree(params, self.side);
        let predicted: BTreeSet<MatFp> = nucleus_predicted(params, self.side).into_iter().collect();
        let twisted: BTreeSet<MatFp> = nucleus_twisted(params, self.side).into_iter().collect();
        let computed: BTreeSet<MatFp> = elems.into_iter().collect();
        Ok(NucleusReport {
            side: self.side,
            dimension: dim,
            unit_count,
            is_field,
            field_degree,
            field_size,
            generator,
            generator_order,
            predicted_degree,
            matches: predicted == computed,
            matches_twisted: twisted == computed,
        })
    }
}

/// Smallest `k | bound` with `a^k = 1`, found by trial over divisors.
fn matrix_order(a: &MatFp, bound: u128) -> u128 {
    let id = MatFp::identity(a.rows(), a.p());
    (1..=bound)
        .filter(|d| bound.is_multiple_of(*d))
        .find(|&d| a.pow(d) == id)
        .unwrap_or(0)
}

/// `d` on the right, `2d` in the middle.
pub fn predicted_degree(params: &GkParams, side: Side) -> usize {
    let d = params.tower().d();
    match side {
        Side::Right => d,
        Side::Middle => 2 * d,
    }
}

/// Matrix of `(x, y) ↦ (a x, b y)`.
pub fn scalar_pair_matrix(params: &GkParams, a: &FieldElem, b: &FieldElem) -> MatFp {
    let t = params.tower();
    let fa = LinPoly::monomial(t, *a, 0).to_matrix(t);
    let fb = LinPoly::monomial(t, *b, 0).to_matrix(t);
    let z = MatFp::zeros(t.m(), t.m(), t.p() as u32);
    MatFp::block2(&fa, &z, &z, &fb)
}

fn scalar_family(params: &GkParams, side: Side, twist: bool) -> Vec<MatFp> {
    let t = params.tower();
    let s = predicted_degree(params, side);
    let mut elems = vec![FieldElem::ZERO];
    elems.extend(t.subfield_units(s).expect("s divides m"));
    elems
        .iter()
        .map(|a| {
            let first = if twist { t.frobenius(a, t.d() as i64) } else { *a };
            scalar_pair_matrix(params, &first, a)
        })
        .collect()
}

/// The maps `(x, y) ↦ (a x, a y)` for `a ∈ F_{p^s}`, `s` from
/// [`predicted_degree`].
pub fn nucleus_predicted(params: &GkParams, side: Side) -> Vec<MatFp> {
    scalar_family(params, side, false)
}

/// The maps `(x, y) ↦ (a^(p^d) x, a y)` for `a ∈ F_{p^s}`. On the right
/// `a ∈ D` and this is [`nucleus_predicted`].
pub fn nucleus_twisted(params: &GkParams, side: Side) -> Vec<MatFp> {
    scalar_family(params, side, true)
}

/// `X c Y ∈ C` for every basis member `c`.
pub fn sandwich_holds(set: &SpreadSet, x: &MatFp, y: &MatFp) -> bool {
    set.basis().iter().all(|c| set.coordinates(&x.mul(c).mul(y)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nuclei_at_small_fixture() {
        let params = GkParams::fixture("gk-3-6-2").unwrap();
        let set = SpreadSet::build(&params).unwrap();
        let right = right_nucleus(&set);
        let middle = middle_nucleus(&set);
        assert_eq!(right.dimension(), 1);
        assert_eq!(middle.dimension(), 2);
        let r = right.report(&params).unwrap();
        let m = middle.report(&params).unwrap();
        assert_eq!((r.field_size, r.unit_count, r.matches, r.matches_twisted), (Some(3), 2, true, true));
        // The middle nucleus acts as (a^3 x, a y), not as (a x, a y).
        assert_eq!((m.field_size, m.unit_count, m.matches, m.matches_twisted), (Some(9), 8, false, true));
        assert_eq!(m.generator_order, Some(8));
        let mids: BTreeSet<MatFp> = middle.elements().unwrap().into_iter().collect();
        assert!(right.elements().unwrap().iter().all(|x| mids.contains(x)));
        assert!(sandwich_holds(&set, r.generator.as_ref().unwrap(), m.generator.as_ref().unwrap()));
        let seq = solve_nucleus(&set, Side::Middle, Exec::Sequential);
        assert_eq!(seq.basis, middle.basis);
    }

    #[test]
    fn predicted_sets_are_fields() {
        let params = GkParams::fixture("gk-3-6-2").unwrap();
        for (side, pred) in [Side::Middle, Side::Right]
            .into_iter()
            .flat_map(|side| [(side, nucleus_predicted(&params, side)), (side, nucleus_twisted(&params, side))])
        {
            assert_eq!(pred.len(), 3usize.pow(predicted_degree(&params, side) as u32));
            let set: BTreeSet<&MatFp> = pred.iter().collect();
            for a in &pred {
                for b in &pred {
                    assert!(set.contains(&a.mul(b)));
                    assert!(set.contains(&a.add(b)));
                }
            }
        }
    }

    #[test]
    fn non_field_space_is_reported() {
        // Identity and a nilpotent matrix span a ring that is not a field.
        let mut nil = MatFp::zeros(2, 2, 3);
        nil.set(0, 1, 1);
        let space = Nucleus { side: Side::Right, p: 3, basis: vec![MatFp::identity(2, 3), nil] };
        assert!(!space.is_field().unwrap());
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::io::Write;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::construct::{
    admissible_indices, construct_antidiagonal, construct_diagonal, delta_factorizations,
    verify_pair, Admissible, Autotopism,
};
use crate::error::Result;
use crate::gf::{FieldElem, FieldTower, LogTable};
use crate::linmap::Form;
use crate::par::{self, Exec};
use crate::semifield::{GkParams, SpreadSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum VerifyPolicy {
    /// Every element.
    Full,
    /// `per_family` random elements of each family plus every element whose
    /// free parameter is 1.
    Sampled { per_family: usize, seed: u64 },
}

impl VerifyPolicy {
    /// Full up to 10^5 elements per family, otherwise 10^4 samples.
    pub fn default_for(params: &GkParams, seed: u64) -> VerifyPolicy {
        let t = params.tower();
        if t.unit_order() * (crate::gf::numth::ipow(t.p() as u128, t.e() as u32) - 1) <= 100_000 {
            VerifyPolicy::Full
        } else {
            VerifyPolicy::Sampled { per_family: 10_000, seed }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStats {
    pub i: usize,
    pub form: Form,
    /// Roots `α` passing both admissibility conditions.
    pub roots: usize,
    /// Parameter tuples tried.
    pub raw: u64,
    pub distinct: u64,
    pub duplicates: u64,
    pub expected: u128,
    pub verified: u64,
    pub failed: u64,
}

impl FamilyStats {
    pub fn count_ok(&self) -> bool {
        self.distinct as u128 == self.expected
    }
}

/// Deduplicated autotopisms of every admissible family, sorted by
/// `(i, form, scalars)`.
#[derive(Debug, Clone)]
pub struct GroupInventory {
    params: GkParams,
    pub elements: Vec<Autotopism>,
    pub families: Vec<FamilyStats>,
    pub admissible_diagonal: Vec<usize>,
    pub admissible_antidiagonal: Vec<usize>,
    /// Elements shared between families after merging.
    pub cross_duplicates: u64,
    pub policy: VerifyPolicy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventorySummary {
    pub order: u128,
    pub families: Vec<FamilyStats>,
    pub admissible_diagonal: Vec<usize>,
    pub admissible_antidiagonal: Vec<usize>,
    pub i0: Option<usize>,
    pub duplicates: u64,
    pub verify: VerifyPolicy,
    pub verified: u64,
    pub failed: u64,
    pub counts_ok: bool,
}

/// `(p^m - 1)(p^e - 1)`
pub fn family_size(params: &GkParams) -> u128 {
    let t = params.tower();
    t.unit_order() * (crate::gf::numth::ipow(t.p() as u128, t.e() as u32) - 1)
}

fn construct(
    params: &GkParams,
    form: Form,
    i: usize,
    alpha: &FieldElem,
    free: &FieldElem,
    gamma: &FieldElem,
    eps: &FieldElem,
) -> Autotopism {
    let built = match form {
        Form::Diagonal => construct_diagonal(params, i, alpha, free, gamma, eps),
        Form::Antidiagonal => construct_antidiagonal(params, i, alpha, free, gamma, eps),
    };
    let mut a = built.expect("admissible parameters");
    a.construction = None;
    a
}

/// Every parameter tuple of one admissible family, deduplicated.
pub fn enumerate_family(params: &GkParams, adm: &Admissible, exec: Exec) -> (Vec<Autotopism>, FamilyStats) {
    let t = params.tower();
    let units = t.units();
    let facts: Vec<(FieldElem, Vec<(FieldElem, FieldElem)>)> = adm
        .witnesses
        .iter()
        .map(|(alpha, delta)| (*alpha, delta_factorizations(t, delta)))
        .collect();
    let per_free: u64 = facts.iter().map(|(_, f)| f.len() as u64).sum();
    // The free parameter is a scalar of Y, so duplicates can only occur
    // between tuples sharing it.
    let chunks = par::map_slice(exec, &units, |free| {
        let mut local: Vec<Autotopism> = facts
            .iter()
            .flat_map(|(alpha, fs)| {
                fs.iter().map(move |(g, e)| construct(params, adm.form, adm.i, alpha, free, g, e))
            })
            .collect();
        local.sort();
        local.dedup();
        local
    });
    let mut elements: Vec<Autotopism> = chunks.into_iter().flatten().collect();
    elements.sort();
    elements.dedup();
    let raw = per_free * units.len() as u64;
    let stats = FamilyStats {
        i: adm.i,
        form: adm.form,
        roots: adm.witnesses.len(),
        raw,
        distinct: elements.len() as u64,
        duplicates: raw - elements.len() as u64,
        expected: family_size(params),
        verified: 0,
        failed: 0,
    };
    (elements, stats)
}

/// Indices of `family` chosen for verification under `policy`.
fn verification_targets(family: &[Autotopism], policy: VerifyPolicy, salt: u64) -> Vec<usize> {
    match policy {
        VerifyPolicy::Full => (0..family.len()).collect(),
        VerifyPolicy::Sampled { per_family, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
            let amount = per_family.min(family.len());
            let mut chosen: BTreeSet<usize> = sample(&mut rng, family.len(), amount).into_iter().collect();
            let one = FieldElem::one();
            chosen.extend((0..family.len()).filter(|&j| family[j].scalars()[3] == one));
            chosen.into_iter().collect()
        }
    }
}

/// Builds and verifies every admissible family.
pub fn enumerate_group(params: &GkParams, policy: VerifyPolicy, exec: Exec) -> Result<GroupInventory> {
    let set = SpreadSet::build(params)?;
    enumerate_group_with(&set, policy, exec)
}

pub fn enumerate_group_with(set: &SpreadSet, policy: VerifyPolicy, exec: Exec) -> Result<GroupInventory> {
    let params = set.params();
    let diag = admissible_indices(params, Form::Diagonal);
    let anti = admissible_indices(params, Form::Antidiagonal);
    let mut elements = Vec::new();
    let mut families = Vec::new();
    for adm in diag.iter().chain(&anti) {
        let (family, mut stats) = enumerate_family(params, adm, exec);
        let salt = (adm.i as u64) << 1 | (adm.form == Form::Antidiagonal) as u64;
        let targets = verification_targets(&family, policy, salt);
        let results = par::map_slice(exec, &targets, |&j| verify_pair(set, &family[j]));
        stats.verified = results.iter().filter(|&&ok| ok).count() as u64;
        stats.failed = results.len() as u64 - stats.verified;
        families.push(stats);
        elements.extend(family);
    }
    elements.sort();
    let before = elements.len();
    elements.dedup();
    Ok(GroupInventory {
        params: params.clone(),
        cross_duplicates: (before - elements.len()) as u64,
        elements,
        families,
        admissible_diagonal: diag.iter().map(|a| a.i).collect(),
        admissible_antidiagonal: anti.iter().map(|a| a.i).collect(),
        policy,
    })
}

impl GroupInventory {
    pub fn params(&self) -> &GkParams {
        &self.params
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    /// Smallest positive admissible diagonal index.
    pub fn i0(&self) -> Option<usize> {
        self.admissible_diagonal.iter().copied().find(|&i| i > 0)
    }

    pub fn family(&self, i: usize, form: Form) -> &[Autotopism] {
        let lo = self.elements.partition_point(|a| (a.index(), a.form()) < (i, form));
        let hi = self.elements.partition_point(|a| (a.index(), a.form()) <= (i, form));
        &self.elements[lo..hi]
    }

    pub fn contains(&self, a: &Autotopism) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn all_verified(&self) -> bool {
        self.families.iter().all(|f| f.failed == 0 && f.verified > 0)
    }

    pub fn summary(&self) -> InventorySummary {
        InventorySummary {
            order: self.order(),
            families: self.families.clone(),
            admissible_diagonal: self.admissible_diagonal.clone(),
            admissible_antidiagonal: self.admissible_antidiagonal.clone(),
            i0: self.i0(),
            duplicates: self.cross_duplicates,
            verify: self.policy,
            verified: self.families.iter().map(|f| f.verified).sum(),
            failed: self.families.iter().map(|f| f.failed).sum(),
            counts_ok: self.families.iter().all(FamilyStats::count_ok),
        }
    }

    /// One JSON object per line: index, form, the four scalars as generator
    /// exponents and optionally both matrices.
    pub fn write_jsonl<W: Write>(&self, out: &mut W, with_matrices: bool) -> Result<()> {
        let t = self.params.tower();
        let logs = LogTable::new(t).ok();
        for a in &self.elements {
            let scalars: Vec<u128> = a.scalars().iter().map(|s| scalar_log(t, logs.as_ref(), s)).collect();
            let mut line = json!({ "i": a.index(), "form": a.form(), "scalars": scalars });
            if with_matrices {
                let (x, y) = a.matrices(t);
                line["X"] = serde_json::to_value(&x).expect("serializable");
                line["Y"] = serde_json::to_value(&y).expect("serializable");
            }
            writeln!(out, "{line}").map_err(|e| crate::Error::Parse(e.to_string()))?;
        }
        Ok(())
    }
}

fn scalar_log(t: &FieldTower, logs: Option<&LogTable>, s: &FieldElem) -> u128 {
    match logs.and_then(|l| l.log(t, s)) {
        Some(v) => v as u128,
        None => t.dlog(s).expect("scalars are units"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixture_inventory() {
        let params = GkParams::fixture("gk-3-6-2").unwrap();
        let inv = enumerate_group(&params, VerifyPolicy::Full, Exec::default()).unwrap();
        assert_eq!(inv.admissible_diagonal, vec![0, 3]);
        assert!(inv.admissible_antidiagonal.is_empty());
        assert_eq!(inv.order(), 2 * 5824);
        assert_eq!(inv.cross_duplicates, 0);
        for f in &inv.families {
            assert_eq!(f.distinct, 5824);
            assert_eq!(f.raw, 2 * 5824);
            assert_eq!(f.duplicates, 5824);
            assert_eq!((f.verified, f.failed), (5824, 0));
        }
        assert_eq!(inv.family(3, Form::Diagonal).len(), 5824);
        assert!(inv.family(1, Form::Diagonal).is_empty());
        assert!(inv.contains(&Autotopism::identity()));
        assert_eq!(inv.i0(), Some(3));
    }

    #[test]
    fn sampled_policy_is_deterministic() {
        let params = GkParams::fixture("gk-3-6-2").unwrap();
        let policy = VerifyPolicy::Sampled { per_family: 50, seed: 9 };
        let a = enumerate_group(&params, policy, Exec::Sequential).unwrap();
        let b = enumerate_group(&params, policy, Exec::default()).unwrap();
        assert_eq!(a.summary(), b.summary());
        // 50 samples plus the 8 elements with d_2 = 1, minus overlaps
        assert!(a.families.iter().all(|f| (50..=58).contains(&f.verified) && f.failed == 0));
        let mut buf = Vec::new();
        a.write_jsonl(&mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 11648);
        assert!(text.lines().any(|l| l == "{\"form\":\"diagonal\",\"i\":0,\"scalars\":[0,0,0,0]}"));
    }
}

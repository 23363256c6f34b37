// SPDX-License-Identifier: Apache-2.0

//! Checks shared by the integration targets.

#![allow(dead_code)]

use gk_semifield::autotopism::{
    admissible_indices, construct_antidiagonal, construct_diagonal, enumerate_group, verify_pair, Autotopism,
    BlockMonomial, VerifyPolicy,
};
use gk_semifield::gf::{gcd_lemma_check, FieldTower};
use gk_semifield::linmap::{q_binomial_map, r_binomial_map, Form};
use gk_semifield::par::{self, Exec};
use gk_semifield::semifield::{GkParams, SpreadSet};
use gk_semifield::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One named check with a violation count.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
}

impl Check {
    pub fn new(name: impl Into<String>, checked: u64, violations: u64) -> Self {
        Check { name: name.into(), checked, violations }
    }

    pub fn ok(&self) -> bool {
        self.checked > 0 && self.violations == 0
    }
}

pub fn fixture(name: &str) -> GkParams {
    GkParams::fixture(name).expect("fixture")
}

/// Every nonzero `u` gives an invertible `x ↦ x u^q + x^q u`, every nonzero
/// `v` an invertible `x ↦ x^r v + A x v^r`.
pub fn binomial_bijectivity(params: &GkParams, exec: Exec) -> [Check; 2] {
    let t = params.tower();
    let units = t.units();
    let m = t.m();
    let q_bad = par::map_slice(exec, &units, |u| q_binomial_map(t, u).to_matrix(t).rank() != m);
    let a = params.a();
    let r_bad = par::map_slice(exec, &units, |v| r_binomial_map(t, v, &a).to_matrix(t).rank() != m);
    let count = |bad: &[bool]| bad.iter().filter(|&&b| b).count() as u64;
    [
        Check::new("q-binomial maps invertible", units.len() as u64, count(&q_bad)),
        Check::new("r-binomial maps invertible", units.len() as u64, count(&r_bad)),
    ]
}

/// Tower shapes with `m / gcd(k, m)` odd that are cheap to sweep.
pub const TOWER_SHAPES: [(u64, usize, usize); 7] =
    [(3, 6, 2), (3, 6, 4), (5, 6, 2), (5, 6, 4), (7, 6, 2), (3, 10, 2), (3, 12, 4)];

/// `-1` is not a `(q-1)`-st power in `M^×`.
pub fn minus_one_not_power(towers: &[FieldTower]) -> Check {
    let bad = towers
        .iter()
        .filter(|t| {
            let minus_one = t.neg(&gk_semifield::gf::FieldElem::one());
            t.is_kth_power(&minus_one, t.q() - 1).expect("unit")
        })
        .count();
    Check::new("-1 not a (q-1)-st power", towers.len() as u64, bad as u64)
}

/// The fixed fields of `x^q`, `x^(q^2)` and `x^(r^2)` all equal `E`.
pub fn fixed_fields_agree(t: &FieldTower) -> Check {
    let (k, rk, e) = (t.k() as i64, t.r_degree() as i64, t.e());
    let mut checked = 0u64;
    let mut bad = 0u64;
    let mut counts = [0u128; 3];
    for x in t.elements() {
        let fixed = [t.frobenius(&x, k) == x, t.frobenius(&x, 2 * k) == x, t.frobenius(&x, 2 * rk) == x];
        let in_e = t.in_subfield(&x, e).expect("e divides m");
        checked += 1;
        if fixed.iter().any(|&f| f != in_e) {
            bad += 1;
        }
        for (c, f) in counts.iter_mut().zip(fixed) {
            *c += f as u128;
        }
    }
    let size_e = (t.p() as u128).pow(e as u32);
    bad += counts.iter().filter(|&&c| c != size_e).count() as u64;
    Check::new(format!("fixed fields equal E at p={} m={} k={}", t.p(), t.m(), t.k()), checked, bad)
}

/// Closed forms of `gcd(p^i ∓ 1, p^m - 1)` over `p ≤ 7`, `m ≤ 12`, `i ≤ 2m`.
pub fn gcd_grid() -> Check {
    let mut checked = 0u64;
    let mut bad = 0u64;
    for p in [2u64, 3, 5, 7] {
        for m in 1..=12u32 {
            for i in 1..=2 * m {
                checked += 1;
                if gcd_lemma_check(i, m, p).is_err() {
                    bad += 1;
                }
            }
        }
    }
    Check::new("gcd closed forms", checked, bad)
}

pub fn towers() -> Vec<FieldTower> {
    TOWER_SHAPES.iter().map(|&(p, m, k)| FieldTower::new(p, m, k, None).expect("valid shape")).collect()
}

/// Every lemma check, in a fixed order.
pub fn lemma_suite(exec: Exec) -> Vec<Check> {
    let small = fixture("gk-3-6-2");
    let mut out: Vec<Check> = binomial_bijectivity(&small, exec).into();
    let towers = towers();
    out.push(minus_one_not_power(&towers));
    out.extend(towers.iter().filter(|t| t.size() <= 1 << 16).map(fixed_fields_agree));
    out.push(gcd_grid());
    out
}

/// Square `B` is rejected at every even exponent tried.
pub fn square_b_rejected() -> Check {
    let mut checked = 0u64;
    let mut bad = 0u64;
    for (p, m, k) in [(3u64, 6usize, 2usize), (5, 6, 2)] {
        for b_exp in (0..40).step_by(2) {
            checked += 1;
            let outcome = GkParams::from_exponents(p, m, k, None, b_exp);
            if !matches!(outcome, Err(Error::BNotNonSquare)) {
                bad += 1;
            }
        }
    }
    Check::new("square B rejected", checked, bad)
}

/// Scales one scalar of an element by a non-identity unit.
pub fn perturb(t: &FieldTower, a: &Autotopism, slot: usize, by: &gk_semifield::gf::FieldElem) -> Autotopism {
    let mut s = a.scalars();
    s[slot] = t.mul(&s[slot], by);
    let i = a.index();
    let x = BlockMonomial::diagonal(i, s[0], s[1]);
    let y = match a.form() {
        Form::Diagonal => BlockMonomial::diagonal(i, s[2], s[3]),
        Form::Antidiagonal => BlockMonomial::antidiagonal(i, s[2], s[3]),
    };
    Autotopism::new(x, y)
}

/// Random group elements with one scalar perturbed must fail verification.
pub fn perturbed_rejected(name: &str, samples: usize, seed: u64, exec: Exec) -> Check {
    use rand::seq::SliceRandom;
    let params = fixture(name);
    let set = SpreadSet::build(&params).expect("spread set");
    let inv = enumerate_group(&params, VerifyPolicy::Sampled { per_family: 1, seed }, exec).expect("inventory");
    let t = params.tower();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = t.generator();
    let cases: Vec<Autotopism> = inv
        .elements
        .choose_multiple(&mut rng, samples)
        .enumerate()
        .map(|(j, a)| perturb(t, a, j % 4, &g))
        .collect();
    let accepted = par::map_slice(exec, &cases, |a| verify_pair(&set, a));
    Check::new(
        format!("perturbed elements rejected at {name}"),
        cases.len() as u64,
        accepted.iter().filter(|&&b| b).count() as u64,
    )
}

/// Constructors refuse every root candidate at inadmissible indices.
pub fn inadmissible_rejected(name: &str, exec: Exec) -> Check {
    let params = fixture(name);
    let t = params.tower();
    let one = gk_semifield::gf::FieldElem::one();
    let units = t.units();
    let mut checked = 0u64;
    let mut bad = 0u64;
    for form in [Form::Diagonal, Form::Antidiagonal] {
        let admissible: Vec<usize> = admissible_indices(&params, form).iter().map(|a| a.i).collect();
        for i in (0..t.m()).filter(|i| !admissible.contains(i)) {
            let accepted = par::map_slice(exec, &units, |alpha| {
                let built = match form {
                    Form::Diagonal => construct_diagonal(&params, i, alpha, &one, &one, &one),
                    Form::Antidiagonal => construct_antidiagonal(&params, i, alpha, &one, &one, &one),
                };
                built.is_ok()
            });
            checked += units.len() as u64;
            bad += accepted.iter().filter(|&&b| b).count() as u64;
        }
    }
    Check::new(format!("inadmissible constructions rejected at {name}"), checked, bad)
}

/// Every negative control, in a fixed order.
pub fn negative_controls(exec: Exec) -> Vec<Check> {
    vec![
        square_b_rejected(),
        perturbed_rejected("gk-3-6-2", 2000, 11, exec),
        perturbed_rejected("gk-5-6-2", 2000, 12, exec),
        inadmissible_rejected("gk-3-6-2", exec),
        inadmissible_rejected("gk-5-6-2", exec),
    ]
}

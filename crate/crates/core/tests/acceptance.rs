// SPDX-License-Identifier: Apache-2.0

//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` fail on the computed data; the binary
//! exits non-zero only when the set of failing criteria differs from it.

mod common;

use std::time::Instant;

use common::*;
use gk_semifield::autotopism::{
    ansatz_exhaustive_oracle, enumerate_group_with, family_size, structure_report, GroupInventory, VerifyPolicy,
};
use gk_semifield::cli::predicted_order;
use gk_semifield::gf::numth::ipow;
use gk_semifield::linmap::Form;
use gk_semifield::nuclei::{solve_nucleus, Side};
use gk_semifield::par::Exec;
use gk_semifield::semifield::{check_s3, GroupCase, S3Policy, SpreadSet};

/// Criteria that fail on the computed data, with the reason.
const KNOWN_RED: [(u32, &str); 3] = [
    (2, "middle nucleus is {(a^(p^d) x, a y)}, not {(a x, a y)}"),
    (4, "admissible diagonal indices are {0, 3} at both fixtures, so the orders are 11,648 and 749,952"),
    (5, "gk-5-6-2 has index-3 elements and is non-abelian"),
];

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

struct Fixture {
    name: &'static str,
    set: SpreadSet,
    inv: GroupInventory,
}

fn load(name: &'static str, exec: Exec) -> Fixture {
    let params = fixture(name);
    let set = SpreadSet::build(&params).expect("spread set");
    let inv = enumerate_group_with(&set, VerifyPolicy::Full, exec).expect("inventory");
    Fixture { name, set, inv }
}

fn criterion_1(small: &Fixture, exec: Exec) -> Line {
    let rep = check_s3(&small.set, S3Policy::Full, exec);
    Line {
        id: 1,
        pass: rep.checked == 531_440 && rep.singular_count == 0,
        detail: format!("{}: {} members, {} singular", small.name, rep.checked, rep.singular_count),
    }
}

fn criterion_2(fixtures: &[&Fixture], exec: Exec) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let params = f.inv.params();
        for side in [Side::Right, Side::Middle] {
            let rep = solve_nucleus(&f.set, side, exec).report(params).expect("nucleus");
            let want = ipow(params.tower().p() as u128, rep.predicted_degree as u32);
            let ok = rep.is_field && rep.field_size == Some(want) && rep.matches;
            pass &= ok;
            parts.push(format!(
                "{} {}: size {:?}, literal {}, twisted {}",
                f.name,
                side.name(),
                rep.field_size,
                rep.matches,
                rep.matches_twisted
            ));
        }
    }
    Line { id: 2, pass, detail: parts.join("; ") }
}

fn criterion_3(fixtures: &[&Fixture]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let want = family_size(f.inv.params());
        for s in &f.inv.families {
            let ok = s.distinct as u128 == want && s.verified == s.distinct && s.failed == 0;
            pass &= ok;
            parts.push(format!(
                "{} i={} {}: {} distinct (want {want}), {} verified, {} failed",
                f.name,
                s.i,
                s.form.name(),
                s.distinct,
                s.verified,
                s.failed
            ));
        }
        pass &= !f.inv.families.is_empty();
    }
    Line { id: 3, pass, detail: parts.join("; ") }
}

fn criterion_4(fixtures: &[&Fixture]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let params = f.inv.params();
        let i0 = f.inv.i0();
        let want = predicted_order(params, i0);
        let ok = match params.case() {
            GroupCase::One => {
                want == Some(f.inv.order())
                    && f.inv.admissible_diagonal == [0]
                    && f.inv.admissible_antidiagonal.is_empty()
            }
            GroupCase::Two => want == Some(f.inv.order()),
        };
        pass &= ok;
        parts.push(format!(
            "{} ({}): order {}, predicted {:?}, i0 {:?}, diagonal {:?}, antidiagonal {:?}",
            f.name,
            params.case().label(),
            f.inv.order(),
            want,
            i0,
            f.inv.admissible_diagonal,
            f.inv.admissible_antidiagonal
        ));
    }
    Line { id: 4, pass, detail: parts.join("; ") }
}

fn criterion_5(fixtures: &[&Fixture], exec: Exec) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let rep = structure_report(&f.inv, exec).expect("structure");
        let linear = rep.x_semilinear_over_d && rep.y_semilinear_over_e && rep.common_monomial;
        let shape = match f.inv.params().case() {
            GroupCase::One => rep.abelian && rep.invariants_match && rep.indices == [0],
            GroupCase::Two => {
                !rep.abelian
                    && rep.index_zero_normal
                    && rep.quotient_cyclic
                    && rep.quotient_order == rep.expected_quotient_order
            }
        };
        pass &= shape && linear && rep.closed;
        parts.push(format!(
            "{}: abelian {}, indices {:?}, H0 order {} normal {} invariants {:?} (expected {:?}), \
             quotient {} cyclic {} (expected {}), semilinear/monomial {}, derived {:?}",
            f.name,
            rep.abelian,
            rep.indices,
            rep.h0_order,
            rep.index_zero_normal,
            rep.h0_invariants,
            rep.expected_invariants,
            rep.quotient_order,
            rep.quotient_cyclic,
            rep.expected_quotient_order,
            linear,
            rep.derived_series
        ));
    }
    Line { id: 5, pass, detail: parts.join("; ") }
}

fn criterion_6(small: &Fixture, exec: Exec) -> Line {
    let mut pass = true;
    let mut sizes = Vec::new();
    for form in [Form::Diagonal, Form::Antidiagonal] {
        for i in 0..small.inv.params().tower().m() {
            let (found, _) = ansatz_exhaustive_oracle(&small.set, i, form, exec).expect("oracle");
            let built = small.inv.family(i, form);
            pass &= found.as_slice() == built;
            sizes.push(format!("{}{i}={}", &form.name()[..4], found.len()));
        }
    }
    Line { id: 6, pass, detail: format!("{}: oracle sizes {}", small.name, sizes.join(" ")) }
}

fn from_checks(id: u32, checks: &[Check]) -> Line {
    let pass = checks.iter().all(Check::ok);
    let parts: Vec<String> = checks.iter().map(|c| format!("{} {}/{}", c.name, c.violations, c.checked)).collect();
    Line { id, pass, detail: format!("violations: {}", parts.join("; ")) }
}

fn main() {
    let exec = Exec::default();
    let clock = Instant::now();
    let small = load("gk-3-6-2", exec);
    let large = load("gk-5-6-2", exec);
    let both = [&small, &large];
    let steps: Vec<Box<dyn Fn() -> Line + '_>> = vec![
        Box::new(|| criterion_1(&small, exec)),
        Box::new(|| criterion_2(&both, exec)),
        Box::new(|| criterion_3(&both)),
        Box::new(|| criterion_4(&both)),
        Box::new(|| criterion_5(&both, exec)),
        Box::new(|| criterion_6(&small, exec)),
        Box::new(|| from_checks(7, &lemma_suite(exec))),
        Box::new(|| from_checks(8, &negative_controls(exec))),
    ];
    println!("inventories built in {:.1}s", clock.elapsed().as_secs_f64());
    let mut unexpected = Vec::new();
    for step in &steps {
        let start = Instant::now();
        let line = step();
        let verdict = if line.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {} ({:.1}s): {}", line.id, start.elapsed().as_secs_f64(), line.detail);
        let red = KNOWN_RED.iter().find(|(id, _)| *id == line.id);
        if let Some((_, why)) = red {
            if !line.pass {
                println!("     known: {why}");
            }
        }
        if line.pass == red.is_some() {
            unexpected.push(line.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}

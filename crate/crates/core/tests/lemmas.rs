// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use gk_semifield::gf::{gcd_lemma_check, FieldTower};
use gk_semifield::par::Exec;
use gk_semifield::Error;

#[test]
fn binomial_maps_are_bijective_at_small_fixture() {
    for check in binomial_bijectivity(&fixture("gk-3-6-2"), Exec::default()) {
        assert_eq!(check.checked, 728, "{}", check.name);
        assert!(check.ok(), "{check:?}");
    }
}

#[test]
fn binomial_maps_are_bijective_at_large_fixture() {
    for check in binomial_bijectivity(&fixture("gk-5-6-2"), Exec::default()) {
        assert_eq!(check.checked, 15624, "{}", check.name);
        assert!(check.ok(), "{check:?}");
    }
}

#[test]
fn minus_one_is_not_a_power_on_valid_towers() {
    let check = minus_one_not_power(&towers());
    assert!(check.ok(), "{check:?}");
}

#[test]
fn fixed_fields_coincide() {
    for t in towers().iter().filter(|t| t.size() <= 1 << 16) {
        let check = fixed_fields_agree(t);
        assert!(check.ok(), "{check:?}");
    }
}

#[test]
fn gcd_closed_forms_hold_on_grid() {
    let check = gcd_grid();
    assert_eq!(check.checked, 4 * (2..=24).step_by(2).sum::<u32>() as u64);
    assert!(check.ok(), "{check:?}");
}

#[test]
fn gcd_reference_values() {
    assert_eq!(gcd_lemma_check(2, 6, 3).unwrap(), (8, 2));
    assert_eq!(gcd_lemma_check(2, 4, 3).unwrap(), (8, 10));
    assert_eq!(gcd_lemma_check(3, 6, 5).unwrap(), (124, 126));
    assert_eq!(gcd_lemma_check(4, 6, 2).unwrap(), (3, 1));
}

#[test]
fn even_quotient_towers_are_refused() {
    for (p, m, k) in [(3u64, 4usize, 2usize), (3, 4, 1), (5, 2, 1), (3, 8, 2)] {
        assert!(matches!(FieldTower::new(p, m, k, None), Err(Error::QuotientNotOdd { .. })), "{p} {m} {k}");
    }
}

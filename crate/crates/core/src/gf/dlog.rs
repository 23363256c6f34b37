// SPDX-License-Identifier: Apache-2.0

//! Baby-step/giant-step discrete logarithms to a fixed generator.

use std::collections::HashMap;

use super::{FieldElem, FieldTower};

pub(crate) struct Bsgs {
    step: u128,
    baby: HashMap<FieldElem, u128>,
    /// `g^(-step)`
    giant: FieldElem,
}

impl Bsgs {
    pub(crate) fn empty() -> Self {
        Bsgs {
            step: 0,
            baby: HashMap::new(),
            giant: FieldElem::one(),
        }
    }

    pub(crate) fn new(tower: &FieldTower, g: FieldElem) -> Self {
        let n = tower.unit_order();
        let mut step = (n as f64).sqrt().ceil() as u128;
        while step * step < n {
            step += 1;
        }
        let mut baby = HashMap::with_capacity(step as usize);
        let mut acc = FieldElem::one();
        for j in 0..step {
            baby.entry(acc).or_insert(j);
            acc = tower.mul(&acc, &g);
        }
        // acc = g^step
        let giant = tower.inv(&acc).expect("g is a unit");
        Bsgs { step, baby, giant }
    }

    pub(crate) fn solve(&self, tower: &FieldTower, h: &FieldElem) -> Option<u128> {
        let mut gamma = *h;
        for i in 0..=self.step {
            if let Some(&j) = self.baby.get(&gamma) {
                return Some((i * self.step + j) % tower.unit_order());
            }
            gamma = tower.mul(&gamma, &self.giant);
        }
        None
    }
}

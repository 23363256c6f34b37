// SPDX-License-Identifier: Apache-2.0

use super::{FieldElem, FieldTower};
use crate::error::{Error, Result};

/// Largest field order for which a full table is built.
pub const MAX_TABLE_ORDER: u128 = 1 << 24;

/// Complete exp/log tables for the tower's generator.
pub struct LogTable {
    order: u32,
    logs: Vec<u32>,
    exps: Vec<FieldElem>,
}

impl LogTable {
    pub fn new(tower: &FieldTower) -> Result<Self> {
        if tower.size() > MAX_TABLE_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "log table for {} elements",
                tower.size()
            )));
        }
        let exps = tower.units();
        let mut logs = vec![u32::MAX; tower.size() as usize];
        for (n, a) in exps.iter().enumerate() {
            logs[tower.index_of(a) as usize] = n as u32;
        }
        Ok(LogTable { order: exps.len() as u32, logs, exps })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `None` for zero.
    pub fn log(&self, tower: &FieldTower, a: &FieldElem) -> Option<u32> {
        match self.logs[tower.index_of(a) as usize] {
            u32::MAX => None,
            n => Some(n),
        }
    }

    pub fn exp(&self, n: i64) -> FieldElem {
        self.exps[n.rem_euclid(self.order as i64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_bsgs() {
        let t = FieldTower::new(3, 6, 2, None).unwrap();
        let table = LogTable::new(&t).unwrap();
        assert_eq!(table.log(&t, &FieldElem::ZERO), None);
        for n in [0i64, 1, 5, 364, 727] {
            let a = table.exp(n);
            assert_eq!(table.log(&t, &a), Some(n as u32));
            assert_eq!(t.dlog(&a).unwrap(), n as u128);
        }
        assert_eq!(table.exp(-1), t.gen_pow(727));
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower, TowerConfig};

/// Which shape the autotopism group takes, decided by whether `A^2` is an
/// `(r-1)`-st power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupCase {
    /// `A^2` is not an `(r-1)`-st power.
    One,
    /// `A^2` is an `(r-1)`-st power.
    Two,
}

impl GroupCase {
    pub fn label(self) -> &'static str {
        match self {
            GroupCase::One => "case 1",
            GroupCase::Two => "case 2",
        }
    }
}

/// A tower together with the two scalars of the multiplication.
#[derive(Clone)]
pub struct GkParams {
    tower: Arc<FieldTower>,
    a: FieldElem,
    b: FieldElem,
}

impl std::fmt::Debug for GkParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GkParams")
            .field("p", &self.tower.p())
            .field("m", &self.tower.m())
            .field("k", &self.tower.k())
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

impl GkParams {
    /// Checks that `B` is a non-square and `AB` is a unit of `F_Q`, then
    /// asserts the implied non-squareness of `A`.
    pub fn validate(tower: Arc<FieldTower>, a: FieldElem, b: FieldElem) -> Result<Self> {
        if b.is_zero() || tower.is_square(&b)? {
            return Err(Error::BNotNonSquare);
        }
        let ab = tower.mul(&a, &b);
        if ab.is_zero() || !tower.in_subfield(&ab, tower.m() / 2)? {
            return Err(Error::ABNotInFQ);
        }
        if tower.is_square(&a)? {
            return Err(Error::ANotNonSquare);
        }
        Ok(GkParams { tower, a, b })
    }

    /// No checks. Used for negative controls.
    pub fn unchecked(tower: Arc<FieldTower>, a: FieldElem, b: FieldElem) -> Self {
        GkParams { tower, a, b }
    }

    /// Builds the tower with its default modulus and validates
    /// `A = g^a_exp`, `B = g^b_exp`. With `a_exp = None`, `A` is chosen by
    /// [`Self::auto_a`].
    pub fn from_exponents(p: u64, m: usize, k: usize, a_exp: Option<i128>, b_exp: i128) -> Result<Self> {
        let tower = FieldTower::new(p, m, k, None).map_err(|e| Error::TowerInvalid(Box::new(e)))?;
        Self::with_tower(Arc::new(tower), a_exp, b_exp)
    }

    pub fn with_tower(tower: Arc<FieldTower>, a_exp: Option<i128>, b_exp: i128) -> Result<Self> {
        let b = tower.gen_pow(b_exp);
        match a_exp {
            Some(e) => {
                let a = tower.gen_pow(e);
                Self::validate(tower, a, b)
            }
            None => {
                let a = Self::auto_a(&tower, &b)?;
                Self::validate(tower, a, b)
            }
        }
    }

    /// `A = c / B` for the unit `c` of `F_Q` with the smallest generator
    /// exponent that makes validation pass.
    pub fn auto_a(tower: &Arc<FieldTower>, b: &FieldElem) -> Result<FieldElem> {
        let b_inv = tower.inv(b).map_err(|_| Error::BNotNonSquare)?;
        let big_q = tower.big_q();
        let step = tower.unit_order() / (big_q - 1);
        let mut last = Error::ABNotInFQ;
        for j in 0..(big_q - 1) {
            let c = tower.gen_pow((j * step) as i128);
            let a = tower.mul(&c, &b_inv);
            match Self::validate(tower.clone(), a, *b) {
                Ok(_) => return Ok(a),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// The shipped parameter sets: `B = g` and `A` chosen automatically.
    pub fn fixture(name: &str) -> Result<Self> {
        match name {
            "gk-3-6-2" => Self::from_exponents(3, 6, 2, None, 1),
            "gk-5-6-2" => Self::from_exponents(5, 6, 2, None, 1),
            _ => Err(Error::Parse(format!("unknown fixture {name:?}"))),
        }
    }

    pub fn fixture_names() -> &'static [&'static str] {
        &["gk-3-6-2", "gk-5-6-2"]
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn a(&self) -> FieldElem {
        self.a
    }

    pub fn b(&self) -> FieldElem {
        self.b
    }

    pub fn n(&self) -> usize {
        2 * self.tower.m()
    }

    pub fn case(&self) -> GroupCase {
        let t = &self.tower;
        let a2 = t.square(&self.a);
        if t.is_kth_power(&a2, t.r() - 1).expect("A is a unit") {
            GroupCase::Two
        } else {
            GroupCase::One
        }
    }

    pub fn config(&self) -> ParamsConfig {
        let t = &self.tower;
        ParamsConfig {
            tower: t.config(),
            a: t.coeffs(&self.a),
            b: t.coeffs(&self.b),
            a_log: t.dlog(&self.a).ok(),
            b_log: t.dlog(&self.b).ok(),
        }
    }

    pub fn from_config(cfg: &ParamsConfig) -> Result<Self> {
        let tower = FieldTower::from_config(&cfg.tower).map_err(|e| Error::TowerInvalid(Box::new(e)))?;
        let a = tower.elem(&cfg.a);
        let b = tower.elem(&cfg.b);
        Self::validate(Arc::new(tower), a, b)
    }
}

/// Serialized parameters. `a_log`/`b_log` are informational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsConfig {
    pub tower: TowerConfig,
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    #[serde(rename = "A_log", default, skip_serializing_if = "Option::is_none")]
    pub a_log: Option<u128>,
    #[serde(rename = "B_log", default, skip_serializing_if = "Option::is_none")]
    pub b_log: Option<u128>,
}

// SPDX-License-Identifier: Apache-2.0

use super::params::GkParams;
use super::spread::{gk_multiply, MulFn};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::linmap::{basis_elem, MatFp};

/// A bilinear multiplication on `F_p^n`, stored as the `n` matrices of
/// `y ↦ e_i ∘ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presemifield {
    label: String,
    p: u32,
    left: Vec<MatFp>,
}

impl Presemifield {
    pub fn new(label: impl Into<String>, p: u32, left: Vec<MatFp>) -> Result<Self> {
        let n = left.len();
        if left.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch(format!("expected {n} matrices of size {n}x{n}")));
        }
        Ok(Presemifield { label: label.into(), p, left })
    }

    /// The multiplication `(x, y) ∘ (u, v)` on coordinates of `M × M`.
    pub fn from_gk(params: &GkParams) -> Self {
        Self::from_mul(params, gk_multiply)
    }

    /// Structure matrices of any bilinear map on `M × M`.
    pub fn from_mul(params: &GkParams, mul: MulFn) -> Self {
        let t = params.tower();
        let m = t.m();
        let n = 2 * m;
        let left = (0..n)
            .map(|i| {
                let (x, y) = split_basis(t, i);
                let cols: Vec<Vec<u32>> = (0..n)
                    .map(|j| {
                        let (u, v) = split_basis(t, j);
                        let (a, b) = mul(params, &x, &y, &u, &v);
                        let mut c = t.coeffs(&a);
                        c.extend(t.coeffs(&b));
                        c
                    })
                    .collect();
                MatFp::from_cols(t.p() as u32, n, &cols)
            })
            .collect();
        Presemifield {
            label: format!("gk({},{},{})", t.p(), t.m(), t.k()),
            p: t.p() as u32,
            left,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Matrix of `y ↦ x ∘ y`.
    pub fn left_matrix(&self, x: &[u32]) -> MatFp {
        let n = self.dim();
        let mut out = MatFp::zeros(n, n, self.p);
        for (c, l) in x.iter().zip(&self.left) {
            if *c != 0 {
                out.add_scaled_assign(*c, l);
            }
        }
        out
    }

    /// Matrix of `x ↦ x ∘ y`.
    pub fn right_matrix(&self, y: &[u32]) -> MatFp {
        let cols: Vec<Vec<u32>> = self.left.iter().map(|l| l.mul_vec(y)).collect();
        MatFp::from_cols(self.p, self.dim(), &cols)
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.left_matrix(x).mul_vec(y)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.left[i].col(j) == self.left[j].col(i)))
    }

    /// The semifield `a ∗ b = R_e^{-1}(a) ∘ L_e^{-1}(b)`, so that
    /// `(x ∘ e) ∗ (e ∘ y) = x ∘ y` and `e ∘ e` is the identity.
    pub fn kaplansky(&self, e: &[u32]) -> Result<Presemifield> {
        if e.iter().all(|&c| c == 0) {
            return Err(Error::ZeroInput);
        }
        let re_inv = self.right_matrix(e).invert().map_err(|_| Error::SingularTranslation)?;
        let le_inv = self.left_matrix(e).invert().map_err(|_| Error::SingularTranslation)?;
        let n = self.dim();
        let left = (0..n)
            .map(|i| {
                let mut unit = vec![0u32; n];
                unit[i] = 1;
                self.left_matrix(&re_inv.mul_vec(&unit)).mul(&le_inv)
            })
            .collect();
        Ok(Presemifield { label: format!("{}*", self.label), p: self.p, left })
    }
}

fn split_basis(t: &crate::gf::FieldTower, i: usize) -> (FieldElem, FieldElem) {
    let m = t.m();
    if i < m {
        (basis_elem(t, i), FieldElem::ZERO)
    } else {
        (FieldElem::ZERO, basis_elem(t, i - m))
    }
}

// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower};
use crate::linmap::{basis_elem, Form, LinPoly, MatFp, MooreDecoder, SemilinearPair};

/// `(x, y) ↦ S · (x^(p^i), y^(p^i))` for a 2×2 matrix `S` over `M`,
/// stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockMonomial {
    pub degree: u8,
    pub s: [FieldElem; 4],
}

impl BlockMonomial {
    pub fn diagonal(degree: usize, a: FieldElem, d: FieldElem) -> Self {
        BlockMonomial { degree: degree as u8, s: [a, FieldElem::ZERO, FieldElem::ZERO, d] }
    }

    /// `(x, y) ↦ (b y^(p^i), c x^(p^i))`
    pub fn antidiagonal(degree: usize, b: FieldElem, c: FieldElem) -> Self {
        BlockMonomial { degree: degree as u8, s: [FieldElem::ZERO, b, c, FieldElem::ZERO] }
    }

    pub fn identity() -> Self {
        Self::diagonal(0, FieldElem::one(), FieldElem::one())
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn form(&self) -> Option<Form> {
        let nz = self.s.map(|c| !c.is_zero());
        match nz {
            [true, false, false, true] => Some(Form::Diagonal),
            [false, true, true, false] => Some(Form::Antidiagonal),
            _ => None,
        }
    }

    /// The two nonzero scalars in reading order.
    pub fn scalars(&self) -> [FieldElem; 2] {
        match self.form() {
            Some(Form::Antidiagonal) => [self.s[1], self.s[2]],
            _ => [self.s[0], self.s[3]],
        }
    }

    pub fn eval(&self, t: &FieldTower, x: &FieldElem, y: &FieldElem) -> (FieldElem, FieldElem) {
        let i = self.degree as i64;
        let (xi, yi) = (t.frobenius(x, i), t.frobenius(y, i));
        let [a, b, c, d] = &self.s;
        (
            t.add(&t.mul(a, &xi), &t.mul(b, &yi)),
            t.add(&t.mul(c, &xi), &t.mul(d, &yi)),
        )
    }

    /// `self ∘ other`
    pub fn compose(&self, t: &FieldTower, other: &BlockMonomial) -> BlockMonomial {
        let i = self.degree as i64;
        let f = other.s.map(|c| t.frobenius(&c, i));
        let [a, b, c, d] = &self.s;
        let s = [
            t.add(&t.mul(a, &f[0]), &t.mul(b, &f[2])),
            t.add(&t.mul(a, &f[1]), &t.mul(b, &f[3])),
            t.add(&t.mul(c, &f[0]), &t.mul(d, &f[2])),
            t.add(&t.mul(c, &f[1]), &t.mul(d, &f[3])),
        ];
        let degree = ((self.degree as usize + other.degree as usize) % t.m()) as u8;
        BlockMonomial { degree, s }
    }

    pub fn inverse(&self, t: &FieldTower) -> Result<BlockMonomial> {
        let [a, b, c, d] = &self.s;
        let det = t.sub(&t.mul(a, d), &t.mul(b, c));
        let inv_det = t.inv(&det).map_err(|_| Error::SingularMatrix)?;
        let adj = [*d, t.neg(b), t.neg(c), *a];
        let back = -(self.degree as i64);
        let s = adj.map(|x| t.frobenius(&t.mul(&x, &inv_det), back));
        let degree = ((t.m() - self.degree as usize) % t.m()) as u8;
        Ok(BlockMonomial { degree, s })
    }

    pub fn pow(&self, t: &FieldTower, mut e: u128) -> BlockMonomial {
        let mut result = BlockMonomial::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(t, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(t, &base);
            }
        }
        result
    }

    pub fn to_pair(&self, t: &FieldTower) -> SemilinearPair {
        let i = self.degree as i64;
        let [f1, f2, f3, f4] = self.s.map(|c| {
            if c.is_zero() {
                LinPoly::zero(t)
            } else {
                LinPoly::monomial(t, c, i)
            }
        });
        let mut pair = SemilinearPair::new(f1, f2, f3, f4);
        pair.tag = self.form().map(|f| (self.degree(), f));
        pair
    }

    /// The four block polynomials recovered from values on the power basis,
    /// without reading the stored scalars.
    pub fn decode(&self, t: &FieldTower, dec: &MooreDecoder) -> SemilinearPair {
        let m = t.m();
        let mut vals = [(); 4].map(|_| Vec::with_capacity(m));
        for j in 0..m {
            let b = basis_elem(t, j);
            let (u, v) = self.eval(t, &b, &FieldElem::ZERO);
            vals[0].push(u);
            vals[2].push(v);
            let (u, v) = self.eval(t, &FieldElem::ZERO, &b);
            vals[1].push(u);
            vals[3].push(v);
        }
        let [f1, f2, f3, f4] = vals.map(|v| dec.decode_values(t, &v));
        SemilinearPair::new(f1, f2, f3, f4)
    }

    /// Inverse of [`BlockMonomial::to_matrix`] on matrices of that shape.
    pub fn from_matrix(t: &FieldTower, dec: &MooreDecoder, mat: &MatFp) -> Option<BlockMonomial> {
        let pair = dec.decode_pair(t, mat).ok()?;
        if !pair.is_common_monomial() {
            return None;
        }
        let mono: Vec<Option<(usize, FieldElem)>> = pair.f.iter().map(|f| f.as_monomial()).collect();
        let degree = mono.iter().flatten().next()?.0;
        let s = [0, 1, 2, 3].map(|j| mono[j].map_or(FieldElem::ZERO, |(_, c)| c));
        Some(BlockMonomial { degree: degree as u8, s })
    }

    /// `2m × 2m` matrix over `F_p`.
    pub fn to_matrix(&self, t: &FieldTower) -> MatFp {
        let m = t.m();
        let cols: Vec<Vec<u32>> = (0..2 * m)
            .map(|j| {
                let (x, y) = if j < m {
                    (basis_elem(t, j), FieldElem::ZERO)
                } else {
                    (FieldElem::ZERO, basis_elem(t, j - m))
                };
                let (u, v) = self.eval(t, &x, &y);
                let mut c = t.coeffs(&u);
                c.extend(t.coeffs(&v));
                c
            })
            .collect();
        MatFp::from_cols(t.p() as u32, 2 * m, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn tower() -> &'static FieldTower {
        static T: OnceLock<FieldTower> = OnceLock::new();
        T.get_or_init(|| FieldTower::new(3, 6, 2, None).unwrap())
    }

    fn arb_mono() -> impl Strategy<Value = BlockMonomial> {
        (0usize..6, 0i128..728, 0i128..728, any::<bool>()).prop_map(|(i, a, b, anti)| {
            let t = tower();
            if anti {
                BlockMonomial::antidiagonal(i, t.gen_pow(a), t.gen_pow(b))
            } else {
                BlockMonomial::diagonal(i, t.gen_pow(a), t.gen_pow(b))
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matrix_form_is_a_homomorphism(f in arb_mono(), g in arb_mono()) {
            let t = tower();
            let fg = f.compose(t, &g);
            prop_assert_eq!(fg.to_matrix(t), f.to_matrix(t).mul(&g.to_matrix(t)));
            prop_assert_eq!(fg.form(), Some(f.form().unwrap().compose(g.form().unwrap())));
            prop_assert_eq!(fg.degree(), (f.degree() + g.degree()) % 6);
            let inv = f.inverse(t).unwrap();
            prop_assert_eq!(f.compose(t, &inv), BlockMonomial::identity());
            prop_assert_eq!(inv.compose(t, &f), BlockMonomial::identity());
            prop_assert_eq!(f.to_pair(t).to_matrix2(t), f.to_matrix(t));
            let dec = MooreDecoder::new(t).unwrap();
            prop_assert_eq!(f.decode(t, &dec).f, f.to_pair(t).f);
            prop_assert_eq!(BlockMonomial::from_matrix(t, &dec, &f.to_matrix(t)), Some(f));
        }
    }

    #[test]
    fn powers() {
        let t = tower();
        let f = BlockMonomial::antidiagonal(1, t.generator(), FieldElem::one());
        assert_eq!(f.pow(t, 0), BlockMonomial::identity());
        assert_eq!(f.pow(t, 3), f.compose(t, &f).compose(t, &f));
        assert_eq!(f.pow(t, 2).form(), Some(Form::Diagonal));
    }
}

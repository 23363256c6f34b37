// SPDX-License-Identifier: Apache-2.0

//! `F_p`-linear maps on `M` and `M × M`.
//!
//! A map on `M` is kept either as a reduced linearized polynomial
//! `x ↦ Σ a_i x^(p^i)` (exponents in `Z/mZ`) or as an `m × m` matrix over
//! `F_p` in the power basis of the tower. Conversion between the two is
//! explicit. Maps on `M × M` use the concatenated basis `(x-part, y-part)`.

mod matfp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower};

pub use matfp::{inv_mod, MatFp};

/// Coordinates of `a` as a column vector.
pub fn coords(tower: &FieldTower, a: &FieldElem) -> Vec<u32> {
    tower.coeffs(a)
}

/// Power-basis element `t^j`.
pub fn basis_elem(tower: &FieldTower, j: usize) -> FieldElem {
    let mut c = vec![0u32; tower.m()];
    c[j] = 1;
    tower.elem(&c)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinPoly {
    coeffs: Vec<FieldElem>,
}

impl LinPoly {
    pub fn zero(tower: &FieldTower) -> Self {
        LinPoly { coeffs: vec![FieldElem::ZERO; tower.m()] }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::monomial(tower, FieldElem::one(), 0)
    }

    /// `x ↦ a x^(p^i)`, `i` taken mod m.
    pub fn monomial(tower: &FieldTower, a: FieldElem, i: i64) -> Self {
        let mut f = Self::zero(tower);
        f.coeffs[i.rem_euclid(tower.m() as i64) as usize] = a;
        f
    }

    pub fn from_coeffs(tower: &FieldTower, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != tower.m() {
            return Err(Error::DimensionMismatch(format!(
                "linearized polynomial needs {} coefficients",
                tower.m()
            )));
        }
        Ok(LinPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// p-degrees with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// `Some((i, a))` when the map is `a x^(p^i)` with `a != 0`.
    pub fn as_monomial(&self) -> Option<(usize, FieldElem)> {
        match self.support().as_slice() {
            [i] => Some((*i, self.coeffs[*i])),
            _ => None,
        }
    }

    pub fn add(&self, tower: &FieldTower, other: &LinPoly) -> LinPoly {
        LinPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| tower.add(a, b))
                .collect(),
        }
    }

    /// `x ↦ c · f(x)`
    pub fn scale(&self, tower: &FieldTower, c: &FieldElem) -> LinPoly {
        LinPoly { coeffs: self.coeffs.iter().map(|a| tower.mul(c, a)).collect() }
    }

    pub fn eval(&self, tower: &FieldTower, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let xi = tower.frobenius(x, i as i64);
            acc = tower.add(&acc, &tower.mul(a, &xi));
        }
        acc
    }

    /// `self ∘ other`
    pub fn compose(&self, tower: &FieldTower, other: &LinPoly) -> LinPoly {
        let m = tower.m();
        let mut out = vec![FieldElem::ZERO; m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = tower.mul(a, &tower.frobenius(b, i as i64));
                let idx = (i + j) % m;
                out[idx] = tower.add(&out[idx], &term);
            }
        }
        LinPoly { coeffs: out }
    }

    /// Column `j` holds the coordinates of `f(t^j)`.
    pub fn to_matrix(&self, tower: &FieldTower) -> MatFp {
        let m = tower.m();
        let cols: Vec<Vec<u32>> = (0..m)
            .map(|j| tower.coeffs(&self.eval(tower, &basis_elem(tower, j))))
            .collect();
        MatFp::from_cols(tower.p() as u32, m, &cols)
    }

    /// The unique reduced linearized polynomial with the given matrix,
    /// recovered by inverting the Moore matrix of the power basis.
    pub fn from_matrix(tower: &FieldTower, mat: &MatFp) -> Result<LinPoly> {
        let m = tower.m();
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "expected {m}x{m}, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        // Σ_i a_i (t^j)^(p^i) = image_j  for j = 0..m
        let system: Vec<Vec<FieldElem>> = (0..m)
            .map(|j| {
                let b = basis_elem(tower, j);
                (0..m).map(|i| tower.frobenius(&b, i as i64)).collect()
            })
            .collect();
        let rhs: Vec<FieldElem> = (0..m)
            .map(|j| {
                let c: Vec<u32> = mat.col(j);
                tower.elem(&c)
            })
            .collect();
        let coeffs = solve_over_field(tower, system, rhs)?;
        Ok(LinPoly { coeffs })
    }

    /// The residue `j` with `f(λx) = λ^(p^j) f(x)` for all `λ ∈ F_{p^s}`.
    /// The zero map reports `Some(0)`.
    pub fn semilinear_over(&self, tower: &FieldTower, s: usize) -> Result<Option<usize>> {
        tower.check_divisor(s)?;
        let mut residues = self.support().into_iter().map(|i| i % s);
        let Some(first) = residues.next() else {
            return Ok(Some(0));
        };
        Ok(residues.all(|j| j == first).then_some(first))
    }

    /// Coefficients as base-p arrays, for reports.
    pub fn coeff_arrays(&self, tower: &FieldTower) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|c| tower.coeffs(c)).collect()
    }
}

/// Inverse of the Moore matrix `((t^j)^(p^i))`, kept for repeated
/// matrix-to-polynomial conversion.
#[derive(Debug, Clone)]
pub struct MooreDecoder {
    inv: Vec<Vec<FieldElem>>,
}

impl MooreDecoder {
    pub fn new(tower: &FieldTower) -> Result<Self> {
        let m = tower.m();
        let system: Vec<Vec<FieldElem>> = (0..m)
            .map(|j| {
                let b = basis_elem(tower, j);
                (0..m).map(|i| tower.frobenius(&b, i as i64)).collect()
            })
            .collect();
        // column j of the inverse solves V a = e_j
        let cols: Vec<Vec<FieldElem>> = (0..m)
            .map(|j| {
                let mut rhs = vec![FieldElem::ZERO; m];
                rhs[j] = FieldElem::one();
                solve_over_field(tower, system.clone(), rhs)
            })
            .collect::<Result<_>>()?;
        let inv = (0..m).map(|i| (0..m).map(|j| cols[j][i]).collect()).collect();
        Ok(MooreDecoder { inv })
    }

    /// The polynomial with `f(t^j) = values[j]`.
    pub fn decode_values(&self, tower: &FieldTower, values: &[FieldElem]) -> LinPoly {
        let coeffs = self
            .inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(values)
                    .filter(|(_, v)| !v.is_zero())
                    .fold(FieldElem::ZERO, |acc, (w, v)| tower.add(&acc, &tower.mul(w, v)))
            })
            .collect();
        LinPoly { coeffs }
    }

    pub fn decode(&self, tower: &FieldTower, mat: &MatFp) -> Result<LinPoly> {
        let m = tower.m();
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch(format!("expected {m}x{m}")));
        }
        let values: Vec<FieldElem> = (0..m).map(|j| tower.elem(&mat.col(j))).collect();
        Ok(self.decode_values(tower, &values))
    }

    /// Splits a `2m × 2m` matrix into its four blocks and decodes each.
    pub fn decode_pair(&self, tower: &FieldTower, mat: &MatFp) -> Result<SemilinearPair> {
        let m = tower.m();
        if mat.rows() != 2 * m || mat.cols() != 2 * m {
            return Err(Error::DimensionMismatch(format!("expected {0}x{0}", 2 * m)));
        }
        let block = |r0: usize, c0: usize| {
            let values: Vec<FieldElem> = (0..m)
                .map(|j| {
                    let c: Vec<u32> = (0..m).map(|r| mat.get(r0 + r, c0 + j)).collect();
                    tower.elem(&c)
                })
                .collect();
            self.decode_values(tower, &values)
        };
        Ok(SemilinearPair::new(block(0, 0), block(0, m), block(m, 0), block(m, m)))
    }
}

/// Gaussian elimination over `M` for a square nonsingular system.
fn solve_over_field(
    tower: &FieldTower,
    mut a: Vec<Vec<FieldElem>>,
    mut b: Vec<FieldElem>,
) -> Result<Vec<FieldElem>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(c, piv);
        b.swap(c, piv);
        let inv = tower.inv(&a[c][c])?;
        for j in c..n {
            a[c][j] = tower.mul(&a[c][j], &inv);
        }
        b[c] = tower.mul(&b[c], &inv);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c];
            for j in c..n {
                let t = tower.mul(&f, &a[c][j]);
                a[r][j] = tower.sub(&a[r][j], &t);
            }
            let t = tower.mul(&f, &b[c]);
            b[r] = tower.sub(&b[r], &t);
        }
    }
    Ok(b)
}

/// `x ↦ x u^q + x^q u`
pub fn q_binomial_map(tower: &FieldTower, u: &FieldElem) -> LinPoly {
    let mut f = LinPoly::zero(tower);
    f.coeffs[0] = tower.pow_big(u, tower.q());
    f.coeffs[tower.k()] = *u;
    f
}

/// `x ↦ x^r v + A x v^r`
pub fn r_binomial_map(tower: &FieldTower, v: &FieldElem, a: &FieldElem) -> LinPoly {
    let mut f = LinPoly::zero(tower);
    f.coeffs[0] = tower.mul(a, &tower.pow_big(v, tower.r()));
    f.coeffs[tower.r_degree()] = *v;
    f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Diagonal,
    Antidiagonal,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Diagonal => "diagonal",
            Form::Antidiagonal => "antidiagonal",
        }
    }

    /// Form of a product, by the block-monomial algebra.
    pub fn compose(self, other: Form) -> Form {
        if self == other {
            Form::Diagonal
        } else {
            Form::Antidiagonal
        }
    }
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Form> {
        match s {
            "diagonal" | "diag" => Ok(Form::Diagonal),
            "antidiagonal" | "anti" => Ok(Form::Antidiagonal),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

/// `(x, y) ↦ (f1(x) + f2(y), f3(x) + f4(y))`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearPair {
    pub f: [LinPoly; 4],
    pub tag: Option<(usize, Form)>,
}

impl SemilinearPair {
    pub fn new(f1: LinPoly, f2: LinPoly, f3: LinPoly, f4: LinPoly) -> Self {
        SemilinearPair { f: [f1, f2, f3, f4], tag: None }
    }

    /// Monomial block map with p-degree `i`: diagonal `(s0, s1)` means
    /// `diag(s0, s1)`, antidiagonal means `[[0, s0], [s1, 0]]`.
    pub fn monomial(tower: &FieldTower, i: usize, form: Form, s0: FieldElem, s1: FieldElem) -> Self {
        let z = LinPoly::zero(tower);
        let a = LinPoly::monomial(tower, s0, i as i64);
        let b = LinPoly::monomial(tower, s1, i as i64);
        let f = match form {
            Form::Diagonal => [a, z.clone(), z, b],
            Form::Antidiagonal => [z.clone(), a, b, z],
        };
        SemilinearPair { f, tag: Some((i, form)) }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::monomial(tower, 0, Form::Diagonal, FieldElem::one(), FieldElem::one())
    }

    pub fn eval(&self, tower: &FieldTower, x: &FieldElem, y: &FieldElem) -> (FieldElem, FieldElem) {
        let [f1, f2, f3, f4] = &self.f;
        (
            tower.add(&f1.eval(tower, x), &f2.eval(tower, y)),
            tower.add(&f3.eval(tower, x), &f4.eval(tower, y)),
        )
    }

    /// `self ∘ other`
    pub fn compose(&self, tower: &FieldTower, other: &SemilinearPair) -> SemilinearPair {
        let [a1, a2, a3, a4] = &self.f;
        let [b1, b2, b3, b4] = &other.f;
        let c = |x: &LinPoly, y: &LinPoly, z: &LinPoly, w: &LinPoly| {
            x.compose(tower, y).add(tower, &z.compose(tower, w))
        };
        SemilinearPair::new(c(a1, b1, a2, b3), c(a1, b2, a2, b4), c(a3, b1, a4, b3), c(a3, b2, a4, b4))
    }

    pub fn to_matrix2(&self, tower: &FieldTower) -> MatFp {
        let m: Vec<MatFp> = self.f.iter().map(|f| f.to_matrix(tower)).collect();
        MatFp::block2(&m[0], &m[1], &m[2], &m[3])
    }

    /// Common semilinearity residue over `F_{p^s}` of all nonzero entries.
    pub fn semilinear_over(&self, tower: &FieldTower, s: usize) -> Result<Option<usize>> {
        let mut common = None;
        for f in self.f.iter().filter(|f| !f.is_zero()) {
            match f.semilinear_over(tower, s)? {
                None => return Ok(None),
                Some(j) if common.is_some_and(|c| c != j) => return Ok(None),
                Some(j) => common = Some(j),
            }
        }
        Ok(Some(common.unwrap_or(0)))
    }

    /// Whether every nonzero entry is a monomial of one common p-degree.
    pub fn is_common_monomial(&self) -> bool {
        let degs: Vec<usize> = self
            .f
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.as_monomial().map(|(i, _)| i))
            .collect::<Option<Vec<_>>>()
            .unwrap_or_default();
        !degs.is_empty()
            && degs.len() == self.f.iter().filter(|f| !f.is_zero()).count()
            && degs.windows(2).all(|w| w[0] == w[1])
    }
}

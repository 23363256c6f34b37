// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::params::{GkParams, ParamsConfig};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower};
use crate::linmap::{basis_elem, MatFp};
use crate::par::{self, Exec};

/// `(x, y) ∘ (u, v)`:
/// `(x^q u + x u^q + B(y^q v + y v^q), x^r v + A x v^r + A y^r u + y u^r)`.
pub fn gk_multiply(
    params: &GkParams,
    x: &FieldElem,
    y: &FieldElem,
    u: &FieldElem,
    v: &FieldElem,
) -> (FieldElem, FieldElem) {
    let t = params.tower();
    let (k, rk) = (t.k() as i64, t.r_degree() as i64);
    let qpart = |a: &FieldElem, b: &FieldElem| {
        t.add(&t.mul(&t.frobenius(a, k), b), &t.mul(a, &t.frobenius(b, k)))
    };
    let first = t.add(&qpart(x, u), &t.mul(&params.b(), &qpart(y, v)));
    let ay = t.mul(&params.a(), &t.frobenius(y, rk));
    let second = [
        t.mul(&t.frobenius(x, rk), v),
        t.mul(&params.a(), &t.mul(x, &t.frobenius(v, rk))),
        t.mul(&ay, u),
        t.mul(y, &t.frobenius(u, rk)),
    ]
    .iter()
    .fold(FieldElem::ZERO, |acc, z| t.add(&acc, z));
    (first, second)
}

/// The variant whose second coordinate is `x^r v + y u^r + A(y v^r + y^r u)`.
/// It is not symmetric in its two arguments and is kept for comparison.
pub fn gk_multiply_variant(
    params: &GkParams,
    x: &FieldElem,
    y: &FieldElem,
    u: &FieldElem,
    v: &FieldElem,
) -> (FieldElem, FieldElem) {
    let t = params.tower();
    let rk = t.r_degree() as i64;
    let (first, _) = gk_multiply(params, x, y, u, v);
    let inner = t.add(
        &t.mul(y, &t.frobenius(v, rk)),
        &t.mul(&t.frobenius(y, rk), u),
    );
    let second = t.add(
        &t.add(&t.mul(&t.frobenius(x, rk), v), &t.mul(y, &t.frobenius(u, rk))),
        &t.mul(&params.a(), &inner),
    );
    (first, second)
}

pub type MulFn = fn(&GkParams, &FieldElem, &FieldElem, &FieldElem, &FieldElem) -> (FieldElem, FieldElem);

fn pair_coords(t: &FieldTower, a: &FieldElem, b: &FieldElem) -> Vec<u32> {
    let mut c = t.coeffs(a);
    c.extend(t.coeffs(b));
    c
}

/// Matrix of `(x, y) ↦ (x, y) ∘ (u, v)` for a given multiplication.
pub fn spread_matrix_with(params: &GkParams, mul: MulFn, u: &FieldElem, v: &FieldElem) -> MatFp {
    let t = params.tower();
    let m = t.m();
    let cols: Vec<Vec<u32>> = (0..2 * m)
        .map(|j| {
            let (x, y) = if j < m {
                (basis_elem(t, j), FieldElem::ZERO)
            } else {
                (FieldElem::ZERO, basis_elem(t, j - m))
            };
            let (a, b) = mul(params, &x, &y, u, v);
            pair_coords(t, &a, &b)
        })
        .collect();
    MatFp::from_cols(t.p() as u32, 2 * m, &cols)
}

/// `R_{u,v}`, the matrix of right multiplication by `(u, v)`.
pub fn spread_matrix(params: &GkParams, u: &FieldElem, v: &FieldElem) -> MatFp {
    spread_matrix_with(params, gk_multiply, u, v)
}

/// The `F_p`-span of `R_{t^j, 0}` and `R_{0, t^j}` with a membership solver.
///
/// Membership reads the query at `2m` pivot entries, solves for the
/// coordinates and confirms by recombination.
#[derive(Debug, Clone)]
pub struct SpreadSet {
    params: GkParams,
    basis: Vec<MatFp>,
    pivots: Vec<usize>,
    /// Maps the pivot entries of a member to its coordinates.
    solve: MatFp,
}

impl SpreadSet {
    pub fn build(params: &GkParams) -> Result<Self> {
        Self::build_with(params, gk_multiply)
    }

    pub fn build_with(params: &GkParams, mul: MulFn) -> Result<Self> {
        let t = params.tower();
        let m = t.m();
        let basis: Vec<MatFp> = (0..2 * m)
            .map(|j| {
                let b = basis_elem(t, j % m);
                if j < m {
                    spread_matrix_with(params, mul, &b, &FieldElem::ZERO)
                } else {
                    spread_matrix_with(params, mul, &FieldElem::ZERO, &b)
                }
            })
            .collect();
        Self::from_basis(params.clone(), basis)
    }

    fn from_basis(params: GkParams, basis: Vec<MatFp>) -> Result<Self> {
        let n = params.n();
        let p = params.tower().p() as u32;
        let dim = basis.len();
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| b.data().iter().map(|&c| c as u32).collect())
            .collect();
        let flat = MatFp::from_rows(p, &rows);
        let (_, pivots) = flat.rref();
        if pivots.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "spread set spans {} dimensions, expected {dim}",
                pivots.len()
            )));
        }
        // restricted[l][j] = basis_j at pivot l
        let restricted = MatFp::from_rows(
            p,
            &pivots
                .iter()
                .map(|&e| basis.iter().map(|b| b.data()[e] as u32).collect())
                .collect::<Vec<_>>(),
        );
        let solve = restricted.invert()?;
        debug_assert_eq!(basis[0].rows(), n);
        Ok(SpreadSet { params, basis, pivots, solve })
    }

    pub fn params(&self) -> &GkParams {
        &self.params
    }

    pub fn basis(&self) -> &[MatFp] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// `Σ λ_j c_j`.
    pub fn combine(&self, coords: &[u32]) -> MatFp {
        let n = self.n();
        let mut out = MatFp::zeros(n, n, self.params.tower().p() as u32);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                out.add_scaled_assign(*c, b);
            }
        }
        out
    }

    /// Coordinates of `mat` in the basis, or `None` if it is not a member.
    pub fn coordinates(&self, mat: &MatFp) -> Option<Vec<u32>> {
        if mat.rows() != self.n() || mat.cols() != self.n() {
            return None;
        }
        let probe: Vec<u32> = self.pivots.iter().map(|&e| mat.data()[e] as u32).collect();
        let coords = self.solve.mul_vec(&probe);
        (self.combine(&coords) == *mat).then_some(coords)
    }

    /// The unique `(u, v)` with `mat = R_{u,v}`.
    pub fn membership(&self, mat: &MatFp) -> Option<(FieldElem, FieldElem)> {
        self.coordinates(mat).map(|c| self.split_coords(&c))
    }

    pub fn split_coords(&self, coords: &[u32]) -> (FieldElem, FieldElem) {
        let t = self.params.tower();
        let m = t.m();
        (t.elem(&coords[..m]), t.elem(&coords[m..]))
    }

    pub fn join_coords(&self, u: &FieldElem, v: &FieldElem) -> Vec<u32> {
        pair_coords(self.params.tower(), u, v)
    }

    /// `R_{u,v}` assembled from the basis.
    pub fn member(&self, u: &FieldElem, v: &FieldElem) -> MatFp {
        self.combine(&self.join_coords(u, v))
    }

    pub fn export(&self) -> SpreadSetExport {
        SpreadSetExport {
            params: self.params.config(),
            basis: self
                .basis
                .iter()
                .map(|b| (0..b.rows()).map(|r| b.row(r).to_vec()).collect())
                .collect(),
        }
    }
}

/// On-disk form: parameters and the `2m` basis matrices as rows of digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadSetExport {
    pub params: ParamsConfig,
    pub basis: Vec<Vec<Vec<u16>>>,
}

impl SpreadSetExport {
    /// Rebuilds the spread set from a file, checking the basis against the
    /// parameters.
    pub fn load(&self) -> Result<SpreadSet> {
        let params = GkParams::from_config(&self.params)?;
        let built = SpreadSet::build(&params)?;
        let p = params.tower().p() as u32;
        let basis: Vec<MatFp> = self
            .basis
            .iter()
            .map(|rows| {
                MatFp::from_rows(p, &rows.iter().map(|r| r.iter().map(|&c| c as u32).collect()).collect::<Vec<_>>())
            })
            .collect();
        if basis != built.basis {
            return Err(Error::DimensionMismatch("basis does not match parameters".into()));
        }
        Ok(built)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S3Policy {
    Full,
    Sampled { samples: u64, seed: u64 },
}

impl S3Policy {
    /// Full sweep up to `2^20` members, sampled otherwise.
    pub fn default_for(params: &GkParams, samples: u64, seed: u64) -> S3Policy {
        let total = params.tower().size().pow(2);
        if total <= 1 << 20 {
            S3Policy::Full
        } else {
            S3Policy::Sampled { samples, seed }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct S3Report {
    pub policy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checked: u64,
    pub singular_count: u64,
    /// `[u, v]` coordinate arrays of singular members, sorted.
    pub singular: Vec<Vec<u32>>,
}

impl S3Report {
    pub fn holds(&self) -> bool {
        self.singular_count == 0
    }
}

/// Keep at most this many counterexamples in a report.
const MAX_WITNESSES: usize = 64;

/// Checks that nonzero members of the spread set are invertible.
pub fn check_s3(set: &SpreadSet, policy: S3Policy, exec: Exec) -> S3Report {
    match policy {
        S3Policy::Full => check_s3_full(set, exec),
        S3Policy::Sampled { samples, seed } => check_s3_sampled(set, samples, seed, exec),
    }
}

fn check_s3_full(set: &SpreadSet, exec: Exec) -> S3Report {
    let p = set.params.tower().p() as u32;
    let dim = set.dimension();
    // The two leading coordinates split the work.
    let lead = 2.min(dim);
    let chunks = (p as usize).pow(lead as u32);
    let results = par::map_range(exec, 0..chunks, |chunk| {
        let mut prefix = vec![0u32; lead];
        let mut c = chunk;
        for slot in prefix.iter_mut().rev() {
            *slot = (c % p as usize) as u32;
            c /= p as usize;
        }
        let mut coords = prefix.clone();
        coords.resize(dim, 0);
        let mut mat = set.combine(&coords);
        let mut checked = 0u64;
        let mut bad = Vec::new();
        loop {
            if coords.iter().any(|&c| c != 0) {
                checked += 1;
                if !mat.is_invertible() {
                    bad.push(coords.clone());
                }
            }
            // odometer over the tail coordinates
            let mut j = dim;
            loop {
                if j == lead {
                    return (checked, bad);
                }
                j -= 1;
                mat.add_scaled_assign(1, &set.basis[j]);
                coords[j] += 1;
                if coords[j] < p {
                    break;
                }
                coords[j] = 0;
            }
        }
    });
    merge("full", None, results)
}

fn check_s3_sampled(set: &SpreadSet, samples: u64, seed: u64, exec: Exec) -> S3Report {
    let t = set.params.tower();
    let dim = set.dimension();
    let p = t.p() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for j in 0..dim {
        let mut c = vec![0u32; dim];
        c[j] = 1;
        queue.push(c);
    }
    let (u, v) = loop {
        let (u, v) = (t.random(&mut rng), t.random(&mut rng));
        if !(u.is_zero() && v.is_zero()) {
            break (u, v);
        }
    };
    for lam in t.subfield_units(t.e()).expect("e divides m") {
        queue.push(set.join_coords(&t.mul(&lam, &u), &t.mul(&lam, &v)));
    }
    for _ in 0..samples {
        let c: Vec<u32> = loop {
            let c: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        queue.push(c);
    }
    let block = 4096;
    let results = par::map_range(exec, 0..queue.len().div_ceil(block), |b| {
        let slice = &queue[b * block..((b + 1) * block).min(queue.len())];
        let bad: Vec<Vec<u32>> = slice
            .iter()
            .filter(|c| !set.combine(c).is_invertible())
            .cloned()
            .collect();
        (slice.len() as u64, bad)
    });
    merge("sampled", Some(seed), results)
}

fn merge(policy: &str, seed: Option<u64>, results: Vec<(u64, Vec<Vec<u32>>)>) -> S3Report {
    let checked = results.iter().map(|r| r.0).sum();
    let mut singular: Vec<Vec<u32>> = results.into_iter().flat_map(|r| r.1).collect();
    singular.sort();
    singular.dedup();
    let singular_count = singular.len() as u64;
    singular.truncate(MAX_WITNESSES);
    S3Report { policy: policy.to_string(), seed, checked, singular_count, singular }
}

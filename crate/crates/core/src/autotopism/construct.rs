// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::mono::BlockMonomial;
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldTower};
use crate::linmap::{Form, MatFp};
use crate::semifield::{GkParams, SpreadSet};

/// An index `i` and a root `α` of `α^(r-1) = A^(p^i ∓ 1)` for which
/// `δ = B^(p^i ∓ 1) / α^(q+1)` lies in `D^×`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissible {
    pub i: usize,
    pub form: Form,
    pub alpha: FieldElem,
    pub delta: FieldElem,
    /// Every root that satisfies both conditions, with its `δ`.
    pub witnesses: Vec<(FieldElem, FieldElem)>,
}

/// Exponent `p^i - 1` (diagonal) or `p^i + 1` (antidiagonal) applied to `a`.
fn twisted_power(t: &FieldTower, a: &FieldElem, i: usize, form: Form) -> FieldElem {
    let fa = t.frobenius(a, i as i64);
    match form {
        Form::Diagonal => t.div(&fa, a).expect("unit"),
        Form::Antidiagonal => t.mul(&fa, a),
    }
}

/// The `δ` belonging to a root `α`, if it lies in `D^×`.
fn delta_for(params: &GkParams, i: usize, form: Form, alpha: &FieldElem) -> Option<FieldElem> {
    let t = params.tower();
    let bpow = twisted_power(t, &params.b(), i, form);
    let aq1 = t.mul(&t.frobenius(alpha, t.k() as i64), alpha);
    let delta = t.div(&bpow, &aq1).ok()?;
    t.in_subfield(&delta, t.d()).expect("d divides m").then_some(delta)
}

/// Whether `α^(r-1) = A^(p^i ∓ 1)`.
fn alpha_condition(params: &GkParams, i: usize, form: Form, alpha: &FieldElem) -> bool {
    let t = params.tower();
    !alpha.is_zero()
        && t.pow_big(alpha, t.r() - 1) == twisted_power(t, &params.a(), i, form)
}

/// Tests both conditions for every `i` in `[0, m)` and every root `α`.
pub fn admissible_indices(params: &GkParams, form: Form) -> Vec<Admissible> {
    let t = params.tower();
    (0..t.m())
        .filter_map(|i| {
            let target = twisted_power(t, &params.a(), i, form);
            let roots = t.roots_of_power_equation(&target, t.r() - 1).expect("A is a unit");
            let witnesses: Vec<(FieldElem, FieldElem)> = roots
                .into_iter()
                .filter_map(|alpha| delta_for(params, i, form, &alpha).map(|d| (alpha, d)))
                .collect();
            let (alpha, delta) = *witnesses.first()?;
            Some(Admissible { i, form, alpha, delta, witnesses })
        })
        .collect()
}

/// Construction parameters. `free` is `d_2` (diagonal) or `c_2`
/// (antidiagonal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub i: usize,
    pub form: Form,
    #[serde(skip)]
    pub free: FieldElem,
    #[serde(skip)]
    pub gamma: FieldElem,
    #[serde(skip)]
    pub epsilon: FieldElem,
    #[serde(skip)]
    pub alpha: FieldElem,
    #[serde(skip)]
    pub delta: FieldElem,
}

/// A pair `(X, Y)` of block-monomial maps. Equality, ordering and hashing
/// look at the maps only.
#[derive(Debug, Clone)]
pub struct Autotopism {
    pub x: BlockMonomial,
    pub y: BlockMonomial,
    pub construction: Option<Box<Construction>>,
}

impl PartialEq for Autotopism {
    fn eq(&self, other: &Self) -> bool {
        (self.x, self.y) == (other.x, other.y)
    }
}

impl Eq for Autotopism {}

impl Hash for Autotopism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.x, self.y).hash(state)
    }
}

impl PartialOrd for Autotopism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Autotopism {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.x.degree, self.form(), self.x, self.y).cmp(&(other.x.degree, other.form(), other.x, other.y))
    }
}

impl Autotopism {
    pub fn new(x: BlockMonomial, y: BlockMonomial) -> Self {
        Autotopism { x, y, construction: None }
    }

    pub fn identity() -> Self {
        Self::new(BlockMonomial::identity(), BlockMonomial::identity())
    }

    pub fn index(&self) -> usize {
        self.x.degree()
    }

    /// The form of `Y`; `X` is diagonal for every constructed element.
    pub fn form(&self) -> Form {
        self.y.form().unwrap_or(Form::Diagonal)
    }

    /// `(a_1, d_1)` and the two scalars of `Y`.
    pub fn scalars(&self) -> [FieldElem; 4] {
        let [a1, d1] = self.x.scalars();
        let [y0, y1] = self.y.scalars();
        [a1, d1, y0, y1]
    }

    /// `(X_a X_b, Y_a Y_b)`.
    pub fn compose(&self, t: &FieldTower, other: &Autotopism) -> Autotopism {
        Autotopism::new(self.x.compose(t, &other.x), self.y.compose(t, &other.y))
    }

    pub fn inverse(&self, t: &FieldTower) -> Autotopism {
        Autotopism::new(
            self.x.inverse(t).expect("autotopism components are invertible"),
            self.y.inverse(t).expect("autotopism components are invertible"),
        )
    }

    pub fn pow(&self, t: &FieldTower, e: u128) -> Autotopism {
        Autotopism::new(self.x.pow(t, e), self.y.pow(t, e))
    }

    pub fn matrices(&self, t: &FieldTower) -> (MatFp, MatFp) {
        (self.x.to_matrix(t), self.y.to_matrix(t))
    }
}

fn check_common(
    params: &GkParams,
    i: usize,
    form: Form,
    alpha: &FieldElem,
    free: &FieldElem,
    gamma: &FieldElem,
    epsilon: &FieldElem,
) -> Result<FieldElem> {
    let t = params.tower();
    let free_name = match form {
        Form::Diagonal => "d_2",
        Form::Antidiagonal => "c_2",
    };
    if free.is_zero() {
        return Err(Error::ZeroParameter(free_name));
    }
    if gamma.is_zero() {
        return Err(Error::ZeroParameter("gamma"));
    }
    if epsilon.is_zero() {
        return Err(Error::ZeroParameter("epsilon"));
    }
    if !t.in_subfield(gamma, t.e())? {
        return Err(Error::NotInSubfield { name: "gamma", s: t.e() });
    }
    if !t.in_subfield(epsilon, t.d())? {
        return Err(Error::NotInSubfield { name: "epsilon", s: t.d() });
    }
    if i >= t.m() || !alpha_condition(params, i, form, alpha) {
        return Err(Error::NonAdmissible { i, form: form.name() });
    }
    let delta = delta_for(params, i, form, alpha).ok_or(Error::NonAdmissible { i, form: form.name() })?;
    let norm = t.mul(&t.frobenius(gamma, t.d() as i64), gamma);
    if t.mul(&norm, &t.square(epsilon)) != delta {
        return Err(Error::FactorizationMismatch);
    }
    Ok(delta)
}

/// Diagonal family: with `ρ = α ε γ`,
/// `a_2 = d_2 / ρ`, `a_1 = a_2^(q+1) γ`, `d_1 = d_2 a_2^r γ^r`.
///
/// `γ ∈ E^×` and `ε ∈ D^×` must satisfy `γ^(p^d+1) ε^2 = δ`.
pub fn construct_diagonal(
    params: &GkParams,
    i: usize,
    alpha: &FieldElem,
    d2: &FieldElem,
    gamma: &FieldElem,
    epsilon: &FieldElem,
) -> Result<Autotopism> {
    let delta = check_common(params, i, Form::Diagonal, alpha, d2, gamma, epsilon)?;
    let t = params.tower();
    let rho = t.mul(&t.mul(alpha, epsilon), gamma);
    let a2 = t.div(d2, &rho)?;
    let a2q = t.frobenius(&a2, t.k() as i64);
    let a1 = t.mul(&t.mul(&a2q, &a2), gamma);
    let rk = t.r_degree() as i64;
    let d1 = t.mul(&t.mul(d2, &t.frobenius(&a2, rk)), &t.frobenius(gamma, rk));
    Ok(Autotopism {
        x: BlockMonomial::diagonal(i, a1, d1),
        y: BlockMonomial::diagonal(i, a2, *d2),
        construction: Some(Box::new(Construction {
            i,
            form: Form::Diagonal,
            free: *d2,
            gamma: *gamma,
            epsilon: *epsilon,
            alpha: *alpha,
            delta,
        })),
    })
}

/// Antidiagonal family: `b_2 = c_2 α ε γ`, `a_1 = B c_2^(q+1) γ`,
/// `d_1 = A b_2 c_2^r γ^r`, under the same factorization of `δ`.
pub fn construct_antidiagonal(
    params: &GkParams,
    i: usize,
    alpha: &FieldElem,
    c2: &FieldElem,
    gamma: &FieldElem,
    epsilon: &FieldElem,
) -> Result<Autotopism> {
    let delta = check_common(params, i, Form::Antidiagonal, alpha, c2, gamma, epsilon)?;
    let t = params.tower();
    let b2 = t.mul(&t.mul(c2, alpha), &t.mul(epsilon, gamma));
    let c2q = t.frobenius(c2, t.k() as i64);
    let a1 = t.mul(&t.mul(&params.b(), &t.mul(&c2q, c2)), gamma);
    let rk = t.r_degree() as i64;
    let d1 = t.mul(
        &t.mul(&params.a(), &b2),
        &t.mul(&t.frobenius(c2, rk), &t.frobenius(gamma, rk)),
    );
    Ok(Autotopism {
        x: BlockMonomial::diagonal(i, a1, d1),
        y: BlockMonomial::antidiagonal(i, b2, *c2),
        construction: Some(Box::new(Construction {
            i,
            form: Form::Antidiagonal,
            free: *c2,
            gamma: *gamma,
            epsilon: *epsilon,
            alpha: *alpha,
            delta,
        })),
    })
}

/// `(γ, ε) ∈ E^× × D^×` with `γ^(p^d+1) ε^2 = δ`.
pub fn delta_factorizations(t: &FieldTower, delta: &FieldElem) -> Vec<(FieldElem, FieldElem)> {
    let es = t.subfield_units(t.e()).expect("e divides m");
    let ds = t.subfield_units(t.d()).expect("d divides m");
    let mut out = Vec::new();
    for g in &es {
        let norm = t.mul(&t.frobenius(g, t.d() as i64), g);
        for e in &ds {
            if t.mul(&norm, &t.square(e)) == *delta {
                out.push((*g, *e));
            }
        }
    }
    out
}

/// Result of checking `X c Y^{-1} ∈ C` on a basis of `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub verified: bool,
    /// Column `j` holds the coordinates of the image of basis member `j`.
    pub witness: Option<MatFp>,
}

/// Checks that `c ↦ X c Y^{-1}` maps the spread set onto itself. The
/// witness is the induced map on coordinates `(u, v) ↦ (w, t)`.
pub fn verify_autotopism(set: &SpreadSet, x: &MatFp, y: &MatFp) -> Verification {
    let fail = Verification { verified: false, witness: None };
    let n = set.n();
    if x.rows() != n || y.rows() != n || !x.is_invertible() {
        return fail;
    }
    let Ok(y_inv) = y.invert() else {
        return fail;
    };
    let mut cols = Vec::with_capacity(set.dimension());
    for c in set.basis() {
        match set.coordinates(&x.mul(c).mul(&y_inv)) {
            Some(coords) => cols.push(coords),
            None => return fail,
        }
    }
    let witness = MatFp::from_cols(x.p(), set.dimension(), &cols);
    Verification { verified: witness.is_invertible(), witness: Some(witness) }
}

/// [`verify_autotopism`] on the matrix forms of a block-monomial pair.
pub fn verify_pair(set: &SpreadSet, a: &Autotopism) -> bool {
    let t = set.params().tower();
    let (x, y) = a.matrices(t);
    verify_autotopism(set, &x, &y).verified
}

/// Product that is checked against the spread set.
pub fn compose_autotopisms(set: &SpreadSet, a: &Autotopism, b: &Autotopism) -> Result<Autotopism> {
    let prod = a.compose(set.params().tower(), b);
    if !verify_pair(set, &prod) {
        return Err(Error::ConventionMismatch);
    }
    Ok(prod)
}

pub fn invert_autotopism(set: &SpreadSet, a: &Autotopism) -> Result<Autotopism> {
    let inv = a.inverse(set.params().tower());
    if !verify_pair(set, &inv) {
        return Err(Error::ConventionMismatch);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (GkParams, SpreadSet) {
        let params = GkParams::fixture("gk-3-6-2").unwrap();
        let set = SpreadSet::build(&params).unwrap();
        (params, set)
    }

    #[test]
    fn identity_instance() {
        let (params, set) = setup();
        let one = FieldElem::one();
        let id = construct_diagonal(&params, 0, &one, &one, &one, &one).unwrap();
        assert_eq!(id, Autotopism::identity());
        let t = params.tower();
        let (x, y) = id.matrices(t);
        let v = verify_autotopism(&set, &x, &y);
        assert!(v.verified);
        assert_eq!(v.witness.unwrap(), MatFp::identity(12, 3));
    }

    #[test]
    fn admissible_sets_at_small_fixture() {
        let (params, _) = setup();
        let diag: Vec<usize> = admissible_indices(&params, Form::Diagonal).iter().map(|a| a.i).collect();
        let anti: Vec<usize> = admissible_indices(&params, Form::Antidiagonal).iter().map(|a| a.i).collect();
        assert_eq!(diag, vec![0, 3]);
        assert!(anti.is_empty());
        let zero = &admissible_indices(&params, Form::Diagonal)[0];
        assert_eq!((zero.alpha, zero.delta), (FieldElem::one(), FieldElem::one()));
    }

    #[test]
    fn random_diagonal_members_verify() {
        let (params, set) = setup();
        let t = params.tower();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for adm in admissible_indices(&params, Form::Diagonal) {
            let facts = delta_factorizations(t, &adm.delta);
            assert_eq!(facts.len(), 8);
            for _ in 0..100 {
                let (g, e) = facts[rng.gen_range(0..facts.len())];
                let d2 = t.random_unit(&mut rng);
                let a = construct_diagonal(&params, adm.i, &adm.alpha, &d2, &g, &e).unwrap();
                assert!(verify_pair(&set, &a), "i = {}", adm.i);
                assert_eq!(a.x.form(), Some(Form::Diagonal));
            }
        }
    }

    #[test]
    fn constructor_errors() {
        let (params, _) = setup();
        let t = params.tower();
        let one = FieldElem::one();
        let g = t.generator();
        assert_eq!(
            construct_diagonal(&params, 1, &one, &one, &one, &one).unwrap_err(),
            Error::NonAdmissible { i: 1, form: "diagonal" }
        );
        assert_eq!(
            construct_diagonal(&params, 0, &one, &FieldElem::ZERO, &one, &one).unwrap_err(),
            Error::ZeroParameter("d_2")
        );
        assert_eq!(
            construct_diagonal(&params, 0, &one, &one, &g, &one).unwrap_err(),
            Error::NotInSubfield { name: "gamma", s: 2 }
        );
        let gamma = t.gen_pow(91);
        assert_eq!(
            construct_diagonal(&params, 0, &one, &one, &gamma, &one).unwrap_err(),
            Error::FactorizationMismatch
        );
        // no antidiagonal index is admissible here
        for i in 0..6 {
            let target = twisted_power(t, &params.a(), i, Form::Antidiagonal);
            for alpha in t.roots_of_power_equation(&target, t.r() - 1).unwrap() {
                assert!(matches!(
                    construct_antidiagonal(&params, i, &alpha, &one, &one, &one),
                    Err(Error::NonAdmissible { .. })
                ));
            }
        }
    }

    #[test]
    fn group_operations_verify() {
        let (params, set) = setup();
        let t = params.tower();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let adm = admissible_indices(&params, Form::Diagonal);
        let facts: Vec<_> = adm.iter().map(|a| delta_factorizations(t, &a.delta)).collect();
        let draw = |rng: &mut ChaCha8Rng| {
            let j = rng.gen_range(0..adm.len());
            let (g, e) = facts[j][rng.gen_range(0..facts[j].len())];
            construct_diagonal(&params, adm[j].i, &adm[j].alpha, &t.random_unit(rng), &g, &e).unwrap()
        };
        for _ in 0..50 {
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            let ab = compose_autotopisms(&set, &a, &b).unwrap();
            assert_eq!(ab.index(), (a.index() + b.index()) % 6);
            let inv = invert_autotopism(&set, &a).unwrap();
            assert_eq!(a.compose(t, &inv), Autotopism::identity());
            let (xa, ya) = a.matrices(t);
            let (xb, yb) = b.matrices(t);
            assert_eq!(ab.matrices(t), (xa.mul(&xb), ya.mul(&yb)));
        }
    }

    #[test]
    fn perturbed_scalars_fail() {
        let (params, set) = setup();
        let t = params.tower();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let one = FieldElem::one();
        for _ in 0..50 {
            let d2 = t.random_unit(&mut rng);
            let a = construct_diagonal(&params, 0, &one, &d2, &one, &one).unwrap();
            let mut bad = a;
            let lam = t.gen_pow(rng.gen_range(1..728));
            bad.y.s[0] = t.mul(&bad.y.s[0], &lam);
            let (x, y) = bad.matrices(t);
            // scaling only the first entry of Y by a unit keeps it in the
            // family only for trivial scalars
            assert!(!verify_autotopism(&set, &x, &y).verified);
        }
        // singular Y
        let (x, _) = Autotopism::identity().matrices(t);
        assert!(!verify_autotopism(&set, &x, &MatFp::zeros(12, 12, 3)).verified);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in the tower `F_p ⊂ D ⊂ E ⊂ M = F_{p^m}`.
//!
//! Elements are dense coefficient vectors in the power basis of a root `t`
//! of the tower's modulus. All arithmetic goes through a [`FieldTower`],
//! which owns the modulus, the Frobenius tables and the discrete-log table
//! for its fixed primitive element.

mod dlog;
mod logtable;
pub mod numth;
pub mod poly;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use dlog::Bsgs;
use numth::{gcd, ipow, mod_inverse};
use poly::FpPoly;

pub use logtable::{LogTable, MAX_TABLE_ORDER};
pub use numth::gcd_lemma_check;

/// Largest supported extension degree `m`.
pub const MAX_DEGREE: usize = 16;
/// Largest supported field order `p^m`.
pub const MAX_FIELD_ORDER: u128 = 1 << 32;

/// An element of `F_{p^m}`: coefficients `c_0..c_{m-1}` of `Σ c_j t^j`.
///
/// The derived ordering compares `c_0` first, which is the canonical order
/// used for modulus and generator selection.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem([u16; MAX_DEGREE]);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem([0; MAX_DEGREE]);

    pub fn one() -> Self {
        let mut c = [0; MAX_DEGREE];
        c[0] = 1;
        FieldElem(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, j: usize) -> u32 {
        self.0[j] as u32
    }

    pub fn raw(&self) -> &[u16; MAX_DEGREE] {
        &self.0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.0[..=last])
    }
}

/// Serialized form of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerConfig {
    pub p: u64,
    pub m: usize,
    pub k: usize,
    /// `c_0..c_m`, monic.
    pub modulus: Vec<u32>,
    /// `g_0..g_{m-1}`.
    pub generator: Vec<u32>,
}

pub struct FieldTower {
    p: u32,
    m: usize,
    k: usize,
    modulus: Vec<u32>,
    neg_modulus: [u64; MAX_DEGREE],
    /// `frob[i][j] = (t^j)^(p^i)`
    frob: Vec<[FieldElem; MAX_DEGREE]>,
    generator: FieldElem,
    order: u128,
    order_factors: Vec<u128>,
    bsgs: Bsgs,
    e: usize,
    d: usize,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

fn validate_shape(p: u64, m: usize, k: usize) -> Result<()> {
    if !numth::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic(p));
    }
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::MNotEven(m));
    }
    if m > MAX_DEGREE {
        return Err(Error::FieldTooLarge(format!("m = {m} exceeds {MAX_DEGREE}")));
    }
    if k == 0 || k >= m {
        return Err(Error::KOutOfRange { k, m });
    }
    let e = numth::gcd_usize(k, m);
    if (m / e).is_multiple_of(2) {
        return Err(Error::QuotientNotOdd { m, e });
    }
    let size = (p as u128).checked_pow(m as u32);
    if size.is_none_or(|s| s > MAX_FIELD_ORDER) {
        return Err(Error::FieldTooLarge(format!("{p}^{m}")));
    }
    Ok(())
}

/// Enumerates the `p^m` coefficient vectors in ascending [`FieldElem`] order.
fn coeffs_from_index(p: u64, m: usize, mut n: u128) -> Vec<u32> {
    let mut c = vec![0u32; m];
    for j in (0..m).rev() {
        c[j] = (n % p as u128) as u32;
        n /= p as u128;
    }
    c
}

/// Smallest monic irreducible of degree `m`, comparing `c_0, c_1, ...` in turn.
pub fn default_modulus(p: u64, m: usize) -> Vec<u32> {
    let total = ipow(p as u128, m as u32);
    for n in 0..total {
        let mut c = coeffs_from_index(p, m, n);
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let poly = FpPoly::new(p, c.iter().map(|&x| x as u64).collect());
        if poly.is_irreducible() {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldTower {
    /// Builds and validates a tower. Without a modulus, the smallest monic
    /// irreducible is used; the generator is always the smallest primitive element.
    pub fn new(p: u64, m: usize, k: usize, modulus: Option<Vec<u32>>) -> Result<FieldTower> {
        validate_shape(p, m, k)?;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m + 1 || c[m] != 1 {
                    return Err(Error::MalformedModulus(format!(
                        "expected {} monic coefficients",
                        m + 1
                    )));
                }
                if c.iter().any(|&x| x as u64 >= p) {
                    return Err(Error::MalformedModulus("coefficient not reduced mod p".into()));
                }
                let poly = FpPoly::new(p, c.iter().map(|&x| x as u64).collect());
                if !poly.is_irreducible() {
                    return Err(Error::ReducibleModulus { p });
                }
                c
            }
            None => default_modulus(p, m),
        };
        let mut tower = Self::bare(p, m, k, modulus);
        let generator = tower
            .elements()
            .find(|a| !a.is_zero() && tower.is_primitive(a))
            .expect("multiplicative group is cyclic");
        tower.install_generator(generator);
        tower.check_invariants()?;
        Ok(tower)
    }

    pub fn from_config(cfg: &TowerConfig) -> Result<FieldTower> {
        validate_shape(cfg.p, cfg.m, cfg.k)?;
        let mut tower = Self::new(cfg.p, cfg.m, cfg.k, Some(cfg.modulus.clone()))?;
        if cfg.generator.len() != cfg.m {
            return Err(Error::Parse("generator has wrong length".into()));
        }
        let g = tower.elem(&cfg.generator);
        if g.is_zero() || !tower.is_primitive(&g) {
            return Err(Error::NotPrimitive);
        }
        tower.install_generator(g);
        Ok(tower)
    }

    pub fn config(&self) -> TowerConfig {
        TowerConfig {
            p: self.p as u64,
            m: self.m,
            k: self.k,
            modulus: self.modulus.clone(),
            generator: self.coeffs(&self.generator),
        }
    }

    fn bare(p: u64, m: usize, k: usize, modulus: Vec<u32>) -> FieldTower {
        let mut neg_modulus = [0u64; MAX_DEGREE];
        for j in 0..m {
            neg_modulus[j] = (p - modulus[j] as u64) % p;
        }
        let order = ipow(p as u128, m as u32) - 1;
        let e = numth::gcd_usize(k, m);
        let d = numth::gcd_usize(k + m / 2, m);
        let mut tower = FieldTower {
            p: p as u32,
            m,
            k,
            modulus,
            neg_modulus,
            frob: Vec::new(),
            generator: FieldElem::one(),
            order,
            order_factors: numth::prime_factors(order),
            bsgs: Bsgs::empty(),
            e,
            d,
        };
        // x -> x^p on the basis, then its powers.
        let mut t = FieldElem::ZERO;
        t.0[1 % m] = 1;
        if m == 1 {
            t = FieldElem::one();
        }
        let mut first = [FieldElem::ZERO; MAX_DEGREE];
        let mut basis = [FieldElem::ZERO; MAX_DEGREE];
        let mut acc = FieldElem::one();
        for j in 0..m {
            basis[j] = acc;
            first[j] = tower.pow_u(&acc, p as u128);
            acc = tower.mul(&acc, &t);
        }
        tower.frob.push(basis);
        tower.frob.push(first);
        for i in 2..m {
            let mut row = [FieldElem::ZERO; MAX_DEGREE];
            for j in 0..m {
                row[j] = tower.apply_frob_table(&tower.frob[i - 1][j], 1);
            }
            tower.frob.push(row);
        }
        tower.frob.truncate(m);
        tower
    }

    fn install_generator(&mut self, g: FieldElem) {
        self.generator = g;
        let bsgs = Bsgs::new(self, g);
        self.bsgs = bsgs;
    }

    fn check_invariants(&self) -> Result<()> {
        if self.e != 2 * self.d {
            return Err(Error::TowerInvariant(format!(
                "e = {} but d = {}",
                self.e, self.d
            )));
        }
        if !self.is_primitive(&self.generator) {
            return Err(Error::NotPrimitive);
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// `e = gcd(k, m)`
    pub fn e(&self) -> usize {
        self.e
    }
    /// `d = gcd(k + m/2, m)`
    pub fn d(&self) -> usize {
        self.d
    }
    /// `q = p^k`
    pub fn q(&self) -> u128 {
        ipow(self.p as u128, self.k as u32)
    }
    /// `Q = p^(m/2)`
    pub fn big_q(&self) -> u128 {
        ipow(self.p as u128, (self.m / 2) as u32)
    }
    /// `r = p^(k + m/2)`
    pub fn r(&self) -> u128 {
        ipow(self.p as u128, (self.k + self.m / 2) as u32)
    }
    /// p-degree of `r` reduced mod m.
    pub fn r_degree(&self) -> usize {
        (self.k + self.m / 2) % self.m
    }
    /// `p^m - 1`
    pub fn unit_order(&self) -> u128 {
        self.order
    }
    pub fn size(&self) -> u128 {
        self.order + 1
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    // ---- element construction ----

    pub fn elem(&self, coeffs: &[u32]) -> FieldElem {
        let mut c = [0u16; MAX_DEGREE];
        for (j, &x) in coeffs.iter().enumerate().take(self.m) {
            c[j] = (x % self.p) as u16;
        }
        FieldElem(c)
    }

    pub fn from_fp(&self, c: u64) -> FieldElem {
        let mut e = FieldElem::ZERO;
        e.0[0] = (c % self.p as u64) as u16;
        e
    }

    pub fn coeffs(&self, a: &FieldElem) -> Vec<u32> {
        a.0[..self.m].iter().map(|&c| c as u32).collect()
    }

    /// The `n`-th element in ascending order (`0 <= n < p^m`).
    pub fn element_at(&self, n: u128) -> FieldElem {
        self.elem(&coeffs_from_index(self.p as u64, self.m, n))
    }

    /// Position of `a` in the ascending order, inverse of [`Self::element_at`].
    pub fn index_of(&self, a: &FieldElem) -> u32 {
        a.0[..self.m]
            .iter()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size()).map(move |n| self.element_at(n))
    }

    /// `g^e` for the tower's primitive element.
    pub fn gen_pow(&self, e: i128) -> FieldElem {
        self.pow(&self.generator, e).expect("generator is nonzero")
    }

    /// Units listed as `g^0, g^1, ..., g^(p^m - 2)`.
    pub fn units(&self) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut acc = FieldElem::one();
        for _ in 0..self.order {
            out.push(acc);
            acc = self.mul(&acc, &self.generator);
        }
        out
    }

    /// Units of `F_{p^s}`, listed as powers of its generator `g^((p^m-1)/(p^s-1))`.
    pub fn subfield_units(&self, s: usize) -> Result<Vec<FieldElem>> {
        self.check_divisor(s)?;
        let sub = ipow(self.p as u128, s as u32) - 1;
        let h = self.gen_pow((self.order / sub) as i128);
        let mut out = Vec::with_capacity(sub as usize);
        let mut acc = FieldElem::one();
        for _ in 0..sub {
            out.push(acc);
            acc = self.mul(&acc, &h);
        }
        Ok(out)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let mut c = [0u16; MAX_DEGREE];
        for x in c.iter_mut().take(self.m) {
            *x = rng.gen_range(0..self.p) as u16;
        }
        FieldElem(c)
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p as u16;
        let mut c = [0u16; MAX_DEGREE];
        for j in 0..self.m {
            let s = a.0[j] as u32 + b.0[j] as u32;
            c[j] = if s >= p as u32 { (s - p as u32) as u16 } else { s as u16 };
        }
        FieldElem(c)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p as u16;
        let mut c = [0u16; MAX_DEGREE];
        for j in 0..self.m {
            c[j] = if a.0[j] == 0 { 0 } else { p - a.0[j] };
        }
        FieldElem(c)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u32, a: &FieldElem) -> FieldElem {
        let p = self.p;
        let c = c % p;
        let mut out = [0u16; MAX_DEGREE];
        for j in 0..self.m {
            out[j] = ((a.0[j] as u32 * c) % p) as u16;
        }
        FieldElem(out)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let m = self.m;
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += ai * b.0[j] as u64;
            }
        }
        for deg in (m..2 * m - 1).rev() {
            let c = prod[deg] % p;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                prod[deg - m + j] += c * self.neg_modulus[j];
            }
        }
        let mut out = [0u16; MAX_DEGREE];
        for j in 0..m {
            out[j] = (prod[j] % p) as u16;
        }
        FieldElem(out)
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    fn pow_u(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        let mut result = FieldElem::one();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: &FieldElem, e: i128) -> Result<FieldElem> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElem::one()),
                e if e > 0 => Ok(FieldElem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        Ok(self.pow_u(a, numth::reduce_exp(e, self.order)))
    }

    /// `a^e` with an unsigned exponent that may exceed `p^m - 1`.
    pub fn pow_big(&self, a: &FieldElem, e: u128) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { FieldElem::one() } else { FieldElem::ZERO };
        }
        self.pow_u(a, e % self.order)
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(a, self.order - 1))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn apply_frob_table(&self, a: &FieldElem, i: usize) -> FieldElem {
        let m = self.m;
        let p = self.p as u64;
        let mut acc = [0u64; MAX_DEGREE];
        for j in 0..m {
            let c = a.0[j] as u64;
            if c == 0 {
                continue;
            }
            let img = &self.frob[i][j];
            for l in 0..m {
                acc[l] += c * img.0[l] as u64;
            }
        }
        let mut out = [0u16; MAX_DEGREE];
        for l in 0..m {
            out[l] = (acc[l] % p) as u16;
        }
        FieldElem(out)
    }

    /// `a^(p^i)`, with `i` taken mod m.
    pub fn frobenius(&self, a: &FieldElem, i: i64) -> FieldElem {
        let i = i.rem_euclid(self.m as i64) as usize;
        if i == 0 {
            return *a;
        }
        self.apply_frob_table(a, i)
    }

    pub fn check_divisor(&self, s: usize) -> Result<()> {
        if s == 0 || !self.m.is_multiple_of(s) {
            return Err(Error::SNotDivisor { s, m: self.m });
        }
        Ok(())
    }

    /// Whether `a` lies in `F_{p^s}`.
    pub fn in_subfield(&self, a: &FieldElem, s: usize) -> Result<bool> {
        self.check_divisor(s)?;
        Ok(self.frobenius(a, s as i64) == *a)
    }

    pub fn is_square(&self, a: &FieldElem) -> Result<bool> {
        self.is_kth_power(a, 2)
    }

    /// Whether `a` is a `t`-th power in `M^×`.
    pub fn is_kth_power(&self, a: &FieldElem, t: u128) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if t == 0 {
            return Ok(*a == FieldElem::one());
        }
        let g = gcd(t, self.order);
        Ok(self.pow_u(a, self.order / g) == FieldElem::one())
    }

    /// Multiplicative order of a unit.
    pub fn multiplicative_order(&self, a: &FieldElem) -> Result<u128> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut ord = self.order;
        for &l in &self.order_factors {
            while ord.is_multiple_of(l) && self.pow_u(a, ord / l) == FieldElem::one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, a: &FieldElem) -> bool {
        !a.is_zero()
            && self
                .order_factors
                .iter()
                .all(|&l| self.pow_u(a, self.order / l) != FieldElem::one())
    }

    /// Discrete logarithm to the tower's generator, in `[0, p^m - 1)`.
    pub fn dlog(&self, a: &FieldElem) -> Result<u128> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.bsgs.solve(self, a).expect("generator is primitive"))
    }

    /// All `x` with `x^t = c`, sorted. Empty when `c` is not a `t`-th power,
    /// otherwise exactly `gcd(t, p^m - 1)` roots.
    pub fn roots_of_power_equation(&self, c: &FieldElem, t: u128) -> Result<Vec<FieldElem>> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.order;
        let g = gcd(t, n);
        let log_c = self.dlog(c)?;
        if log_c % g != 0 {
            return Ok(Vec::new());
        }
        let step = n / g;
        let x0 = if step == 1 {
            0
        } else {
            let t_red = (t / g) % step;
            let inv = mod_inverse(t_red, step).expect("t/g is coprime to n/g");
            ((log_c / g) % step) * inv % step
        };
        let mut roots: Vec<FieldElem> = (0..g)
            .map(|j| self.gen_pow((x0 + j * step) as i128))
            .collect();
        roots.sort();
        Ok(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t362() -> FieldTower {
        FieldTower::new(3, 6, 2, None).unwrap()
    }

    #[test]
    fn tower_parameters() {
        let t = t362();
        assert_eq!((t.q(), t.r(), t.big_q(), t.e(), t.d()), (9, 243, 27, 2, 1));
        assert_eq!(
            FieldTower::new(3, 2, 1, None).unwrap_err(),
            Error::QuotientNotOdd { m: 2, e: 1 }
        );
        assert_eq!(
            FieldTower::new(3, 6, 3, None).unwrap_err(),
            Error::QuotientNotOdd { m: 6, e: 3 }
        );
        assert_eq!(FieldTower::new(9, 6, 2, None).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldTower::new(3, 5, 2, None).unwrap_err(), Error::MNotEven(5));
        assert!(matches!(
            FieldTower::new(3, 6, 2, Some(vec![1, 0, 0, 0, 0, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
    }

    #[test]
    fn f9_modulus() {
        // Only k = 1 is in range for m = 2 and it is rejected, so build the
        // arithmetic table directly.
        let t = FieldTower::bare(3, 2, 1, default_modulus(3, 2));
        assert_eq!(t.modulus(), &[1, 0, 1]);
        let x = t.elem(&[0, 1]);
        assert_eq!(t.mul(&x, &x), t.from_fp(2));
    }

    #[test]
    fn basic_identities() {
        let t = t362();
        let g = t.generator();
        let one = FieldElem::one();
        assert_eq!(t.inv(&one).unwrap(), one);
        assert_eq!(t.mul(&g, &t.gen_pow(727)), one);
        assert_eq!(t.pow(&g, 728).unwrap(), one);
        assert_eq!(t.inv(&FieldElem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(t.pow(&FieldElem::ZERO, -1), Err(Error::DivisionByZero));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = t.random(&mut rng);
            assert_eq!(t.pow(&a, 3).unwrap(), t.frobenius(&a, 1));
            assert_eq!(t.frobenius(&a, 0), a);
            assert_eq!(t.frobenius(&a, 6), a);
            if !a.is_zero() {
                assert_eq!(t.pow(&a, 0).unwrap(), one);
                assert_eq!(t.mul(&a, &t.pow(&a, -1).unwrap()), one);
            }
        }
    }

    #[test]
    fn subfield_counts() {
        let t = t362();
        let count = |s| t.elements().filter(|a| t.in_subfield(a, s).unwrap()).count();
        assert_eq!(count(1), 3);
        assert_eq!(count(2), 9);
        assert_eq!(count(3), 27);
        assert!(!t.in_subfield(&t.generator(), 1).unwrap());
        assert_eq!(t.in_subfield(&FieldElem::one(), 4), Err(Error::SNotDivisor { s: 4, m: 6 }));
        for s in [1, 2, 3, 6] {
            assert!(t.in_subfield(&FieldElem::one(), s).unwrap());
            assert_eq!(t.subfield_units(s).unwrap().len() as u64, 3u64.pow(s as u32) - 1);
        }
    }

    #[test]
    fn power_classes() {
        let t = t362();
        let g = t.generator();
        assert!(t.is_kth_power(&t.square(&g), 2).unwrap());
        assert!(!t.is_kth_power(&g, 2).unwrap());
        assert_eq!(t.is_kth_power(&FieldElem::ZERO, 2), Err(Error::ZeroInput));
        // gcd(242, 728) = 2, so (r-1)-th powers are exactly the squares.
        for a in t.units().iter().step_by(7) {
            assert_eq!(
                t.is_kth_power(a, t.r() - 1).unwrap(),
                t.is_kth_power(a, 2).unwrap()
            );
        }
    }

    #[test]
    fn dlog_round_trip() {
        let t = t362();
        for (n, a) in t.units().iter().enumerate() {
            assert_eq!(t.dlog(a).unwrap(), n as u128);
        }
    }

    #[test]
    fn roots_match_brute_force() {
        let t = t362();
        let units = t.units();
        let roots = t.roots_of_power_equation(&FieldElem::one(), t.q() - 1).unwrap();
        let mut brute: Vec<_> = units
            .iter()
            .copied()
            .filter(|x| t.pow_big(x, t.q() - 1) == FieldElem::one())
            .collect();
        brute.sort();
        assert_eq!(roots.len(), 8);
        assert_eq!(roots, brute);
        assert!(roots.iter().all(|x| t.in_subfield(x, 2).unwrap()));
        assert!(t
            .roots_of_power_equation(&t.generator(), 728)
            .unwrap()
            .is_empty());
        for (c, exp) in [(units[5], 4u128), (units[6], 4), (units[10], 26), (units[13], 14)] {
            let got = t.roots_of_power_equation(&c, exp).unwrap();
            let mut want: Vec<_> = units
                .iter()
                .copied()
                .filter(|x| t.pow_big(x, exp) == c)
                .collect();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn config_round_trip() {
        let t = t362();
        let again = FieldTower::from_config(&t.config()).unwrap();
        assert_eq!(again.config(), t.config());
        let mut bad = t.config();
        bad.generator = vec![1, 0, 0, 0, 0, 0];
        assert_eq!(FieldTower::from_config(&bad).unwrap_err(), Error::NotPrimitive);
    }
}

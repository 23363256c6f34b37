// SPDX-License-Identifier: Apache-2.0

//! Group structure of an inventory, computed on discrete-log coordinates.
//!
//! A monomial pair is stored as its index, whether `Y` is antidiagonal, and
//! the logs of its four scalars. Products then reduce to integer arithmetic
//! modulo `p^m - 1`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::construct::Autotopism;
use super::enumerate::GroupInventory;
use super::mono::BlockMonomial;
use crate::error::Result;
use crate::gf::numth::{gcd, ipow, prime_factors};
use crate::gf::{FieldTower, LogTable};
use crate::linmap::{Form, MatFp, MooreDecoder};
use crate::nuclei::Nucleus;
use crate::par::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogElem {
    pub i: u8,
    pub anti: bool,
    pub x: [u32; 2],
    pub y: [u32; 2],
}

/// Arithmetic on [`LogElem`] for one tower.
#[derive(Debug, Clone)]
pub struct LogGroup {
    n: u64,
    m: usize,
    frob: Vec<u64>,
}

impl LogGroup {
    pub fn new(t: &FieldTower) -> Self {
        let n = t.unit_order() as u64;
        let frob = (0..t.m()).map(|i| (ipow(t.p() as u128, i as u32) % n as u128) as u64).collect();
        LogGroup { n, m: t.m(), frob }
    }

    pub fn identity(&self) -> LogElem {
        LogElem { i: 0, anti: false, x: [0, 0], y: [0, 0] }
    }

    pub fn from_autotopism(&self, t: &FieldTower, logs: &LogTable, a: &Autotopism) -> LogElem {
        let lg = |e| logs.log(t, e).expect("scalars are units");
        let [x0, x1] = a.x.scalars();
        let [y0, y1] = a.y.scalars();
        LogElem {
            i: a.x.degree,
            anti: a.form() == Form::Antidiagonal,
            x: [lg(&x0), lg(&x1)],
            y: [lg(&y0), lg(&y1)],
        }
    }

    pub fn to_autotopism(&self, logs: &LogTable, e: &LogElem) -> Autotopism {
        let ex = |v: u32| logs.exp(v as i64);
        let i = e.i as usize;
        let x = BlockMonomial::diagonal(i, ex(e.x[0]), ex(e.x[1]));
        let y = if e.anti {
            BlockMonomial::antidiagonal(i, ex(e.y[0]), ex(e.y[1]))
        } else {
            BlockMonomial::diagonal(i, ex(e.y[0]), ex(e.y[1]))
        };
        Autotopism::new(x, y)
    }

    fn lin(&self, a: u32, f: u64, b: u32) -> u32 {
        ((a as u64 + f * b as u64) % self.n) as u32
    }

    pub fn compose(&self, a: &LogElem, b: &LogElem) -> LogElem {
        let f = self.frob[a.i as usize];
        let by = if a.anti { [b.y[1], b.y[0]] } else { b.y };
        LogElem {
            i: ((a.i as usize + b.i as usize) % self.m) as u8,
            anti: a.anti ^ b.anti,
            x: [self.lin(a.x[0], f, b.x[0]), self.lin(a.x[1], f, b.x[1])],
            y: [self.lin(a.y[0], f, by[0]), self.lin(a.y[1], f, by[1])],
        }
    }

    pub fn inverse(&self, a: &LogElem) -> LogElem {
        let j = (self.m - a.i as usize) % self.m;
        let g = self.frob[j];
        let neg = |v: u32| (((self.n - v as u64) % self.n) * g % self.n) as u32;
        let y = if a.anti { [neg(a.y[1]), neg(a.y[0])] } else { [neg(a.y[0]), neg(a.y[1])] };
        LogElem { i: j as u8, anti: a.anti, x: [neg(a.x[0]), neg(a.x[1])], y }
    }

    pub fn pow(&self, a: &LogElem, mut e: u128) -> LogElem {
        let mut result = self.identity();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.compose(&result, &base);
            }
            e >>= 1;
            base = self.compose(&base, &base);
        }
        result
    }

    pub fn commutator(&self, a: &LogElem, b: &LogElem) -> LogElem {
        let ab = self.compose(a, b);
        let ba = self.compose(b, a);
        self.compose(&ab, &self.inverse(&ba))
    }

    pub fn conjugate(&self, g: &LogElem, h: &LogElem) -> LogElem {
        self.compose(&self.compose(g, h), &self.inverse(g))
    }

    pub fn order(&self, a: &LogElem) -> u128 {
        let mut s = (self.m / gcd(a.i as u128, self.m as u128) as usize) as u128;
        if a.anti && s % 2 == 1 {
            s *= 2;
        }
        let h = self.pow(a, s);
        debug_assert!(h.i == 0 && !h.anti);
        let n = self.n as u128;
        let ord = |v: u32| n / gcd(n, v as u128);
        let logs = [h.x[0], h.x[1], h.y[0], h.y[1]];
        s * logs.iter().fold(1u128, |acc, &v| lcm(acc, ord(v)))
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[LogElem]) -> HashSet<LogElem> {
        let mut set = HashSet::from([self.identity()]);
        let mut queue = vec![self.identity()];
        while let Some(h) = queue.pop() {
            for g in gens {
                let n = self.compose(&h, g);
                if set.insert(n) {
                    queue.push(n);
                }
            }
        }
        set
    }

    /// Normal closure of `seeds` under conjugation by `conj`, with a
    /// generating set.
    pub fn normal_closure(&self, seeds: &[LogElem], conj: &[LogElem]) -> (HashSet<LogElem>, Vec<LogElem>) {
        let id = self.identity();
        let mut gens: Vec<LogElem> = Vec::new();
        for s in seeds {
            if *s != id && !gens.contains(s) {
                gens.push(*s);
            }
        }
        loop {
            let set = self.closure(&gens);
            let extra: BTreeSet<LogElem> = gens
                .iter()
                .flat_map(|s| conj.iter().map(move |c| (c, s)))
                .map(|(c, s)| self.conjugate(c, s))
                .filter(|x| !set.contains(x))
                .collect();
            if extra.is_empty() {
                return (set, gens);
            }
            gens.extend(extra);
        }
    }

    /// Greedy generating set, trying elements of larger order first.
    pub fn generators(&self, elems: &[LogElem]) -> (Vec<LogElem>, HashSet<LogElem>) {
        let mut cand: Vec<(u128, LogElem)> = elems.iter().map(|e| (self.order(e), *e)).collect();
        cand.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut span = HashSet::from([self.identity()]);
        for (_, e) in cand {
            if span.len() >= elems.len() {
                break;
            }
            if !span.contains(&e) {
                gens.push(e);
                span = self.closure(&gens);
            }
        }
        (gens, span)
    }

    /// Invariant factors of an abelian group of degree-0 diagonal elements,
    /// read off from its `ℓ^j`-torsion counts.
    pub fn invariant_factors(&self, elems: &[LogElem]) -> Vec<u128> {
        let order = elems.len() as u128;
        let n = self.n as u128;
        let killed = |k: u128| {
            elems
                .iter()
                .filter(|e| [e.x[0], e.x[1], e.y[0], e.y[1]].iter().all(|&v| (v as u128 * k).is_multiple_of(n)))
                .count() as u128
        };
        let mut elementary: Vec<(u128, u32)> = Vec::new();
        for l in prime_factors(order) {
            let mut part = 1u128;
            let mut rest = order;
            while rest.is_multiple_of(l) {
                rest /= l;
                part *= l;
            }
            // counts[j] = #{h : ℓ^j h = 0}
            let mut counts = vec![1u128];
            let mut j = 1u32;
            loop {
                let c = killed(ipow(l, j));
                counts.push(c);
                if c >= part || j > 64 {
                    break;
                }
                j += 1;
            }
            let rank = |j: usize| log_exact(counts[j] / counts[j - 1], l);
            for jj in 1..counts.len() {
                let here = rank(jj) - if jj + 1 < counts.len() { rank(jj + 1) } else { 0 };
                for _ in 0..here {
                    elementary.push((l, jj as u32));
                }
            }
        }
        invariants_from_elementary(elementary)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

fn log_exact(mut v: u128, l: u128) -> u32 {
    let mut k = 0;
    while v > 1 {
        v /= l;
        k += 1;
    }
    k
}

fn invariants_from_elementary(elementary: Vec<(u128, u32)>) -> Vec<u128> {
    let mut by_prime: BTreeMap<u128, Vec<u32>> = BTreeMap::new();
    for (l, j) in elementary {
        by_prime.entry(l).or_default().push(j);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u128; len];
    for (l, mut js) in by_prime {
        js.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, j) in js.into_iter().enumerate() {
            out[slot] *= ipow(l, j);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Invariant factors of `Z_{a_1} × ... × Z_{a_k}`, largest first.
pub fn invariant_factors_of(orders: &[u128]) -> Vec<u128> {
    let mut elementary = Vec::new();
    for &a in orders {
        for l in prime_factors(a) {
            let mut j = 0;
            let mut rest = a;
            while rest % l == 0 {
                rest /= l;
                j += 1;
            }
            elementary.push((l, j));
        }
    }
    invariants_from_elementary(elementary)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: u128,
    pub generators: usize,
    /// The generators span exactly the inventory.
    pub closed: bool,
    pub abelian: bool,
    pub max_element_order: u128,
    pub indices: Vec<usize>,
    pub i0: Option<usize>,
    /// The indices present are exactly the multiples of `i0` mod m.
    pub indices_are_multiples: bool,
    /// The elements with `i = 0`, both forms.
    pub index_zero_order: u128,
    pub index_zero_forms: Vec<Form>,
    pub index_zero_normal: bool,
    pub quotient_order: u128,
    pub expected_quotient_order: u128,
    pub quotient_cyclic: bool,
    /// Degree-0 elements with diagonal `Y`.
    pub h0_order: u128,
    pub h0_invariants: Vec<u128>,
    pub expected_invariants: Vec<u128>,
    pub invariants_match: bool,
    pub x_semilinear_over_d: bool,
    pub y_semilinear_over_e: bool,
    pub common_monomial: bool,
    pub derived_series: Vec<u128>,
    pub solvable: bool,
}

/// Semilinearity of every `X` over `D` and `Y` over `E`, and whether all
/// blocks are monomials of one degree, all decoded from function values.
pub fn semilinearity_checks(t: &FieldTower, elems: &[Autotopism], exec: Exec) -> Result<(bool, bool, bool)> {
    let dec = MooreDecoder::new(t)?;
    let flags = par::map_slice(exec, elems, |a| {
        let x = a.x.decode(t, &dec);
        let y = a.y.decode(t, &dec);
        (
            x.semilinear_over(t, t.d()).ok().flatten().is_some(),
            y.semilinear_over(t, t.e()).ok().flatten().is_some(),
            x.is_common_monomial() && y.is_common_monomial(),
        )
    });
    Ok(flags.iter().fold((true, true, true), |acc, f| (acc.0 && f.0, acc.1 && f.1, acc.2 && f.2)))
}

pub fn structure_report(inv: &GroupInventory, exec: Exec) -> Result<StructureReport> {
    let t = inv.params().tower();
    let logs = LogTable::new(t)?;
    let grp = LogGroup::new(t);
    let m = t.m();
    let elems: Vec<LogElem> = par::map_slice(exec, &inv.elements, |a| grp.from_autotopism(t, &logs, a));
    let members: HashSet<LogElem> = elems.iter().copied().collect();

    let (gens, span) = grp.generators(&elems);
    let closed = span.len() == members.len() && span.iter().all(|e| members.contains(e));
    let abelian = gens
        .iter()
        .enumerate()
        .all(|(j, a)| gens[j + 1..].iter().all(|b| grp.compose(a, b) == grp.compose(b, a)));
    let max_element_order = elems.iter().map(|e| grp.order(e)).max().unwrap_or(1);

    let indices: Vec<usize> = elems.iter().map(|e| e.i as usize).collect::<BTreeSet<_>>().into_iter().collect();
    let i0 = inv.i0();
    let step = i0.unwrap_or(m);
    let multiples: Vec<usize> = (0..m).step_by(step).collect();
    let indices_are_multiples = indices == multiples;

    let zero: Vec<LogElem> = elems.iter().copied().filter(|e| e.i == 0).collect();
    let zero_set: HashSet<LogElem> = zero.iter().copied().collect();
    let index_zero_forms: Vec<Form> = zero
        .iter()
        .map(|e| if e.anti { Form::Antidiagonal } else { Form::Diagonal })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (zero_gens, zero_span) = grp.generators(&zero);
    let zero_is_group = zero_span.len() == zero_set.len();
    let index_zero_normal = zero_is_group
        && gens
            .iter()
            .all(|g| zero_gens.iter().all(|h| zero_set.contains(&grp.conjugate(g, h))));
    let index_zero_order = zero.len() as u128;
    let quotient_order = (members.len() as u128).checked_div(index_zero_order).unwrap_or(0);
    let expected_quotient_order = (m / step) as u128;
    // a coset representative of index i0 whose powers meet every coset once
    let quotient_cyclic = match i0 {
        None => quotient_order == 1,
        Some(i0) => elems.iter().find(|e| e.i as usize == i0).is_some_and(|w| {
            let k = (m / i0) as u128;
            (1..k).all(|j| grp.pow(w, j).i != 0)
                && zero_set.contains(&grp.pow(w, k))
                && quotient_order == k
        }),
    };

    let h0: Vec<LogElem> = zero.iter().copied().filter(|e| !e.anti).collect();
    let h0_invariants = grp.invariant_factors(&h0);
    let e_units = ipow(t.p() as u128, t.e() as u32) - 1;
    let expected_invariants = invariant_factors_of(&[t.unit_order(), e_units]);
    let invariants_match = h0_invariants == expected_invariants;

    let (x_semilinear_over_d, y_semilinear_over_e, common_monomial) =
        semilinearity_checks(t, &inv.elements, exec)?;

    let mut derived_series = vec![members.len() as u128];
    let mut current = gens.clone();
    loop {
        let comms: Vec<LogElem> = current
            .iter()
            .flat_map(|a| current.iter().map(move |b| (a, b)))
            .map(|(a, b)| grp.commutator(a, b))
            .collect();
        let (next, next_gens) = grp.normal_closure(&comms, &current);
        let size = next.len() as u128;
        if size == *derived_series.last().expect("nonempty") {
            break;
        }
        derived_series.push(size);
        if size == 1 {
            break;
        }
        let elems: Vec<LogElem> = next.into_iter().collect();
        current = if next_gens.len() <= 8 { next_gens } else { grp.generators(&elems).0 };
    }
    let solvable = derived_series.last() == Some(&1);

    Ok(StructureReport {
        order: members.len() as u128,
        generators: gens.len(),
        closed,
        abelian,
        max_element_order,
        indices,
        i0,
        indices_are_multiples,
        index_zero_order,
        index_zero_forms,
        index_zero_normal,
        quotient_order,
        expected_quotient_order,
        quotient_cyclic,
        h0_order: h0.len() as u128,
        h0_invariants,
        expected_invariants,
        invariants_match,
        x_semilinear_over_d,
        y_semilinear_over_e,
        common_monomial,
        derived_series,
        solvable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub pairs: usize,
    pub present: usize,
}

/// Checks that `(ρ, I)` and `(I, μ^{-1})` lie in the inventory for every
/// unit `ρ` of the right nucleus and `μ` of the middle nucleus, together
/// with all their products.
pub fn nucleus_embedding(inv: &GroupInventory, right: &Nucleus, middle: &Nucleus) -> Result<EmbeddingReport> {
    let t = inv.params().tower();
    let dec = MooreDecoder::new(t)?;
    let units = |n: &Nucleus| -> Result<Vec<MatFp>> {
        Ok(n.elements()?.into_iter().filter(|m| m.is_invertible()).collect())
    };
    let rs = units(right)?;
    let ms = units(middle)?;
    let mut pairs = 0;
    let mut present = 0;
    for r in &rs {
        for mu in &ms {
            pairs += 1;
            let mu_inv = mu.invert()?;
            let (Some(x), Some(y)) = (
                BlockMonomial::from_matrix(t, &dec, r),
                BlockMonomial::from_matrix(t, &dec, &mu_inv),
            ) else {
                continue;
            };
            let a = Autotopism::new(x, y);
            if inv.contains(&a) && a.matrices(t) == (r.clone(), mu_inv) {
                present += 1;
            }
        }
    }
    Ok(EmbeddingReport { pairs, present })
}

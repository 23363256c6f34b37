// SPDX-License-Identifier: Apache-2.0

//! Integer helpers for exponent arithmetic. Exponents such as `r^2 - 1`
//! overflow `u64` for the larger towers, so everything here is `u128`.

use crate::error::{Error, Result};

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_usize(a: usize, b: usize) -> usize {
    gcd(a as u128, b as u128) as usize
}

/// Integer power with overflow checking.
pub fn ipow(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).expect("integer power overflows u128")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorisation as `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: u128, n: u128) -> Option<u128> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u128)
}

/// Reduce a signed exponent into `[0, n)`.
pub fn reduce_exp(e: i128, n: u128) -> u128 {
    e.rem_euclid(n as i128) as u128
}

/// Returns `(gcd(p^i - 1, p^m - 1), gcd(p^i + 1, p^m - 1))` after checking
/// both against their closed forms in terms of `gcd(i, m)`.
pub fn gcd_lemma_check(i: u32, m: u32, p: u64) -> Result<(u128, u128)> {
    if i == 0 || m == 0 {
        return Err(Error::Parse("i and m must be positive".into()));
    }
    let p = p as u128;
    let pm = ipow(p, m) - 1;
    let minus = gcd(ipow(p, i) - 1, pm);
    let plus = gcd(ipow(p, i) + 1, pm);
    let g = gcd(i as u128, m as u128) as u32;
    let want_minus = ipow(p, g) - 1;
    let want_plus = if (m / g).is_multiple_of(2) {
        ipow(p, g) + 1
    } else if p == 2 {
        1
    } else {
        2
    };
    if minus != want_minus || plus != want_plus {
        return Err(Error::LemmaViolation(format!(
            "i={i}, m={m}, p={p}: got ({minus}, {plus}), closed form ({want_minus}, {want_plus})"
        )));
    }
    Ok((minus, plus))
}

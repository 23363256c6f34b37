// SPDX-License-Identifier: Apache-2.0

//! Dense polynomials over a prime field, used only to select and validate
//! the defining modulus of a tower.

/// Coefficients low-degree-first, no trailing zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        // p is prime, so a^(p-2) is the inverse.
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = *c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + self.p - c) % self.p;
        }
        FpPoly::new(self.p, out)
    }

    pub fn rem(&self, modulus: &FpPoly) -> FpPoly {
        let dm = modulus.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let lead_inv = self.inv(*modulus.coeffs.last().unwrap());
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % self.p;
            if c != 0 {
                for (j, mc) in modulus.coeffs.iter().enumerate() {
                    let idx = top - dm + j;
                    r[idx] = (r[idx] + self.p - c * mc % self.p) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(self.p, r)
    }

    pub fn mul_mod(&self, other: &FpPoly, modulus: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, out).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &FpPoly) -> FpPoly {
        let mut result = FpPoly::new(self.p, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        result
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(0) | None => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let x = FpPoly::x(self.p);
        // frob[j] = x^(p^j) mod self
        let mut frob = vec![x.rem(self)];
        for j in 1..=n {
            let next = frob[j - 1].pow_mod(self.p as u128, self);
            frob.push(next);
        }
        if frob[n] != x.rem(self) {
            return false;
        }
        for l in super::numth::prime_factors(n as u128) {
            let j = n / l as usize;
            let g = frob[j].sub(&x).gcd(self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // t^2 + 1 over F_3 is irreducible, over F_5 it is not (2^2 = -1).
        assert!(FpPoly::new(3, vec![1, 0, 1]).is_irreducible());
        assert!(!FpPoly::new(5, vec![1, 0, 1]).is_irreducible());
        // t^4 + 1 over F_3 factors.
        assert!(!FpPoly::new(3, vec![1, 0, 0, 0, 1]).is_irreducible());
    }

    #[test]
    fn count_irreducible_quadratics() {
        // Number of monic irreducible quadratics over F_p is (p^2 - p)/2.
        for p in [3u64, 5, 7] {
            let mut count = 0;
            for c0 in 0..p {
                for c1 in 0..p {
                    if FpPoly::new(p, vec![c0, c1, 1]).is_irreducible() {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, (p * p - p) / 2);
        }
    }
}

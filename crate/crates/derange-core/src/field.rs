//! Finite field construction `GF(p^e)` with deterministic encodings.
//!
//! Elements are integers `0..q-1` read as coefficient vectors base `p`
//! (`Σ cᵢ·pⁱ`). The modulus is the first monic irreducible polynomial of
//! degree `e` in that same encoding order, so every construction is
//! reproducible bit for bit.

use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `n = p^e`, when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

/// A finite field of order `p^e ≤ 2^16`.
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// Non-leading coefficients `a_0..a_{e-1}` of the monic modulus
    /// `x^e + Σ aᵢ xⁱ`.
    modulus: Vec<u64>,
    primitive: u64,
}

impl FiniteField {
    /// Builds `GF(p^e)` with the lexicographically least monic irreducible
    /// modulus and the least primitive element.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= 1 << 16)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(e)))?;
        let modulus = least_irreducible(p, e);
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            primitive: 1,
        };
        field.primitive = field.find_primitive();
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// The least element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> u64 {
        self.primitive
    }

    /// Non-leading modulus coefficients `a_0..a_{e-1}`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, x: u64) -> Vec<u64> {
        let mut out = vec![0; self.e as usize];
        let mut x = x;
        for slot in out.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        out
    }

    fn undigits(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da
            .iter()
            .zip(db.iter())
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.undigits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&neg)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        // schoolbook product then reduction by the monic modulus
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (e..2 * e - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &m) in self.modulus.iter().enumerate() {
                let slot = deg - e + k;
                prod[slot] = (prod[slot] + c * ((self.p - m) % self.p)) % self.p;
            }
        }
        self.undigits(&prod[..e])
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn multiplicative_order_is_full(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        let full = self.q - 1;
        if full == 1 {
            return x == 1;
        }
        let mut m = full;
        let mut primes = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        primes.iter().all(|&ell| self.pow(x, full / ell) != 1)
    }

    fn find_primitive(&self) -> u64 {
        (1..self.q)
            .find(|&x| self.multiplicative_order_is_full(x))
            .expect("a finite field has a primitive element")
    }
}

/// Least monic irreducible polynomial of degree `e` over `F_p`, returned as
/// its non-leading coefficients; "least" means least `Σ aᵢ pⁱ`.
fn least_irreducible(p: u64, e: u32) -> Vec<u64> {
    let count = p.pow(e);
    for m in 0..count {
        let coeffs = digits_of(m, p, e as usize);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn digits_of(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=e/2`.
fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let e = coeffs.len();
    // full coefficient vector of the monic polynomial, low to high
    let mut poly = coeffs.to_vec();
    poly.push(1);
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut divisor = digits_of(m, p, d);
            divisor.push(1);
            if divides(&divisor, &poly, p) {
                return false;
            }
        }
    }
    true
}

/// Does monic `divisor` divide monic `poly` over `F_p`?
fn divides(divisor: &[u64], poly: &[u64], p: u64) -> bool {
    let d = divisor.len() - 1;
    let mut rem = poly.to_vec();
    loop {
        while rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.is_empty() {
            return true;
        }
        let deg = rem.len() - 1;
        if deg < d {
            return false;
        }
        // subtract lead · x^(deg-d) · divisor; the divisor is monic, so the
        // leading term cancels exactly
        let lead = rem[deg];
        let shift = deg - d;
        for (k, &c) in divisor.iter().enumerate() {
            rem[shift + k] = (rem[shift + k] + (p - c % p) * lead) % p;
        }
        debug_assert_eq!(rem[deg], 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf5_prime_field() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.primitive_element(), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.add(3, 4), 2);
    }

    #[test]
    fn gf4_unique_modulus() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(f.modulus(), &[1, 1]);
        // the class of x generates the multiplicative group
        assert_eq!(f.primitive_element(), 2);
        assert_eq!(f.pow(2, 3), 1);
    }

    #[test]
    fn gf9_least_modulus_and_primitive() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        // x^2 + 1 is the least irreducible quadratic over F_3
        assert_eq!(f.modulus(), &[1, 0]);
        // 2 and x have small order; x + 1 (encoded 4) has order 8
        assert_eq!(f.primitive_element(), 4);
        let mut x = 1u64;
        let mut order = 0;
        loop {
            x = f.mul(x, 4);
            order += 1;
            if x == 1 {
                break;
            }
        }
        assert_eq!(order, 8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FiniteField::new(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(FiniteField::new(2, 17), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2u64, 1u32), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4), (5, 2), (3, 3), (2, 5), (2, 6)] {
            let f = FiniteField::new(p, e).unwrap();
            let q = f.order();
            assert!(q <= 64);
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
                // multiplicative inverses exist for nonzero elements
                if a != 0 {
                    assert!((1..q).any(|b| f.mul(a, b) == 1));
                }
            }
            // the primitive element really has order q - 1
            let gamma = f.primitive_element();
            let mut x = gamma;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, gamma);
                ord += 1;
            }
            assert_eq!(ord, q - 1);
        }
    }
}

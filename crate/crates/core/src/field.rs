//! Small finite fields GF(q) with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`; for `q = p^k` the base-`p`
//! digits of the code are the coefficients of a polynomial modulo a fixed
//! Conway polynomial.

use crate::error::{Error, Result};

/// Conway polynomials for the supported non-prime fields, as
/// `(q, p, coefficients c_0..c_{k-1})` of the monic `x^k + … + c_1 x + c_0`.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1]),
    (8, 2, &[1, 1, 0]),
    (16, 2, &[1, 1, 0, 0]),
    (32, 2, &[1, 0, 1, 0, 0]),
    (9, 3, &[2, 2]),
    (27, 3, &[1, 2, 0]),
    (25, 5, &[2, 4]),
    (49, 7, &[3, 6]),
];

/// Returns `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, degree) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus: Vec<u32> = if degree == 1 {
            Vec::new()
        } else {
            CONWAY
                .iter()
                .find(|(qq, _, _)| *qq == q)
                .map(|(_, _, c)| c.to_vec())
                .ok_or_else(|| Error::Unsupported(format!("no irreducible polynomial for GF({q})")))?
        };
        let digits = |mut x: u32| -> Vec<u32> {
            (0..degree)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&sum);

                // schoolbook product then reduction by x^k = -(c_{k-1}x^{k-1} + … + c_0)
                let k = degree as usize;
                let mut prod = vec![0u32; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for top in (k..2 * k).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let sub = c * m % p;
                        let slot = top - k + i;
                        prod[slot] = (prod[slot] + p - sub) % p;
                    }
                }
                mul[a as usize * qs + b as usize] = encode(&prod[..k]);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a as usize * qs + b as usize] == 0).unwrap())
            .collect();
        let mut inv = vec![0; qs];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[a as usize * qs + b as usize] == 1)
                .ok_or_else(|| Error::Unsupported(format!("GF({q}) modulus is reducible")))?;
        }
        Ok(FiniteField {
            q,
            p,
            degree,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The smallest-coded generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&a| self.multiplicative_order(a) == self.q - 1)
            .expect("finite field has a primitive element")
    }
}

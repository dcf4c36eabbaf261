//! Exact arithmetic in `F_p` and `F_{p^m}`.
//!
//! An element of `F_{p^m}` is a polynomial `c_0 + c_1 y + ... + c_{m-1} y^{m-1}`
//! over `F_p`, reduced modulo a monic irreducible `g(y)` of degree `m`. It is
//! stored as the packed index `sum c_i p^i`, so [`FieldElem`] is `Copy` and
//! cheap to hash. Multiplication goes through discrete-log tables built once
//! when the context is created.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Largest field order for which log tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of `F_{p^m}`, meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `F_{p^m}` with a fixed defining polynomial. Immutable after construction.
pub struct FieldCtx {
    p: u32,
    m: usize,
    q: u32,
    /// Monic defining polynomial over `F_p`, ascending degree, length `m + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx").field("p", &self.p).field("m", &self.m).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

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

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplication of coefficient vectors modulo a monic polynomial over `F_p`.
/// Only used while bootstrapping the log tables.
fn slow_mul(a: &[u64], b: &[u64], modulus: &[u32], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &g) in modulus[..m].iter().enumerate() {
            let sub = c * g as u64 % p;
            prod[top - m + i] = (prod[top - m + i] + p - sub) % p;
        }
    }
    prod.truncate(m);
    prod
}

impl FieldCtx {
    /// Builds `F_{p^m}`. When `modulus` is `None` the lexicographically smallest
    /// monic irreducible of degree `m` is used, comparing coefficient lists from
    /// the constant term upward.
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenPrimeUnsupported);
        }
        if m == 0 {
            return Err(Error::InvalidParams("extension degree m must be >= 1".into()));
        }
        let q = (p as u128).pow(m as u32);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::TooLarge(format!("field order {p}^{m} exceeds {MAX_FIELD_ORDER}")));
        }
        let prime = Self::prime_field(p as u32);
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m + 1 || coeffs[m] % p != 1 {
                    return Err(Error::InvalidParams(format!("modulus must be monic of degree {m}, got {coeffs:?}")));
                }
                let g: Vec<u32> = coeffs.iter().map(|&c| (c % p) as u32).collect();
                if m > 1 && !prime.poly_ring().is_irreducible(&Self::lift(&prime, &g)) {
                    return Err(Error::NotIrreducible(format!("{g:?}")));
                }
                g
            }
            None if m == 1 => vec![0, 1],
            None => Self::smallest_irreducible(&prime, m),
        };
        Ok(Self::with_tables(p as u32, m, modulus))
    }

    /// The prime field `F_p` with defining polynomial `y`. `p` must be an odd prime.
    pub fn prime_field(p: u32) -> FieldCtx {
        Self::with_tables(p, 1, vec![0, 1])
    }

    fn lift(prime: &FieldCtx, coeffs: &[u32]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| prime.from_int(c as i64)).collect())
    }

    fn smallest_irreducible(prime: &FieldCtx, m: usize) -> Vec<u32> {
        let p = prime.p;
        let total = (p as u64).pow(m as u32);
        let ring = prime.poly_ring();
        for idx in 0..total {
            // idx enumerates (c_0, ..., c_{m-1}) with c_0 most significant.
            let mut coeffs = vec![0u32; m + 1];
            let mut rest = idx;
            for i in (0..m).rev() {
                coeffs[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs[m] = 1;
            if coeffs[0] == 0 {
                continue;
            }
            if ring.is_irreducible(&Self::lift(prime, &coeffs)) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    fn with_tables(p: u32, m: usize, modulus: Vec<u32>) -> FieldCtx {
        let q = p.pow(m as u32);
        let pp = p as u64;
        let to_vec = |idx: u32| -> Vec<u64> {
            let mut v = vec![0u64; m];
            let mut rest = idx;
            for c in v.iter_mut() {
                *c = (rest % p) as u64;
                rest /= p;
            }
            v
        };
        let to_idx = |v: &[u64]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c as u32) };
        let pow_slow = |base: &[u64], mut e: u64| -> Vec<u64> {
            let mut acc = to_vec(1);
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(&acc, &b, &modulus, pp);
                }
                b = slow_mul(&b, &b, &modulus, pp);
                e >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let divisors = prime_divisors(order);
        let generator = (1..q)
            .map(to_vec)
            .find(|g| divisors.iter().all(|&r| to_idx(&pow_slow(g, order / r)) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = to_vec(1);
        for i in 0..(q - 1) {
            let idx = to_idx(&cur);
            exp[i as usize] = idx;
            log[idx as usize] = i;
            cur = slow_mul(&cur, &generator, &modulus, pp);
        }
        FieldCtx { p, m, q, modulus, exp, log }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Defining polynomial, ascending degree, monic.
    pub fn modulus(&self) -> Vec<u64> {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn poly_ring(&self) -> PolyRing<'_> {
        PolyRing::new(self)
    }

    /// Element with packed index `idx`; `idx < q`.
    pub fn elem(&self, idx: u32) -> FieldElem {
        debug_assert!(idx < self.q);
        FieldElem(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Element from its coordinates with respect to `1, y, ..., y^{m-1}`.
    /// Coordinates are reduced mod `p`; shorter lists are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        if coeffs.len() > self.m {
            return Err(Error::InvalidParams(format!(
                "field element {coeffs:?} has more than m = {} coordinates",
                self.m
            )));
        }
        let p = self.p as i64;
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c.rem_euclid(p) as u32);
        Ok(FieldElem(idx))
    }

    /// Coordinates of `a`, little-endian, always of length `m`.
    pub fn to_coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut out = vec![0u32; self.m];
        let mut rest = a.0;
        for c in out.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.m == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * scale;
            scale *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.m == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            let c = x % self.p;
            out += ((self.p - c) % self.p) * scale;
            scale *= self.p;
            x /= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElem(self.exp[(s % (self.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(FieldElem(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.q as u64 - 1;
        let l = self.log[a.0 as usize] as u128 * (e % order) as u128 % order as u128;
        FieldElem(self.exp[l as usize])
    }

    /// The unique `delta0` with `delta0^{p^k} = delta`, computed as
    /// `delta^t` where `t = (p^k)^{-1} mod (p^m - 1)`.
    pub fn pk_root(&self, delta: FieldElem, k: u32) -> Result<FieldElem> {
        if delta.is_zero() {
            return Err(Error::ZeroInput);
        }
        let order = self.q as u64 - 1;
        let pk = mod_pow(self.p as u64, k as u64, order);
        let t = mod_inverse(pk, order).expect("p^k is coprime to p^m - 1");
        Ok(self.pow(delta, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_defaults() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(f5.modulus(), vec![0, 1]);
        assert_eq!(f5.order(), 5);
    }

    #[test]
    fn f9_default_modulus() {
        // Exhaustive: the monic quadratics y^2 + b y + c over F_3 in lex order
        // (c, b): c = 0 has root 0; y^2 + 1 has no root since -1 is not a square.
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(FieldCtx::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(2, 1, None).unwrap_err(), Error::EvenPrimeUnsupported);
        assert!(matches!(FieldCtx::new(3, 2, Some(&[2, 0, 1])), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn small_values() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(f5.inv(f5.from_int(4)).unwrap(), f5.from_int(4));
        assert_eq!(f5.pow(f5.from_int(2), 5), f5.from_int(2));
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.inv(FieldElem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn pk_roots() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(f5.pk_root(f5.from_int(2), 1).unwrap(), f5.from_int(2));
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.pk_root(f3.from_int(2), 1).unwrap(), f3.from_int(2));
        assert_eq!(f3.pk_root(FieldElem::ZERO, 1), Err(Error::ZeroInput));
        for (p, m) in [(3, 1), (3, 2), (5, 2), (7, 1)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            assert_eq!(f.pk_root(FieldElem::ONE, 2).unwrap(), FieldElem::ONE);
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let a = f9.from_coeffs(&[1, 2]).unwrap();
        assert_eq!(f9.to_coeffs(a), vec![1, 2]);
        // y^2 = -1 in F_3[y]/(y^2+1)
        let y = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(y, y), f9.from_int(-1));
        assert!(f9.from_coeffs(&[1, 1, 1]).is_err());
    }
}

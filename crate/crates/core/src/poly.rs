//! Dense univariate polynomials over `F_{p^m}`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_divisors, FieldCtx, FieldElem};

/// Coefficients in ascending degree with no trailing zeros. The zero
/// polynomial has an empty vector and degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElem::ONE] }
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^i`.
    pub fn monomial(c: FieldElem, i: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; i + 1];
        coeffs[i] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn x() -> Poly {
        Poly::monomial(FieldElem::ONE, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    /// Coefficients padded or cut to exactly `len` entries.
    pub fn to_fixed(&self, len: usize) -> Vec<FieldElem> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    /// Canonical order: by degree, then coefficient indices compared from the
    /// constant term upward.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    pub fn serialize_with(&self, fq: &FieldCtx) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|&c| fq.to_coeffs(c)).collect()
    }

    pub fn deserialize_with(fq: &FieldCtx, raw: &[Vec<i64>]) -> Result<Poly> {
        let coeffs = raw.iter().map(|c| fq.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// Serialized polynomial: a list of field elements, each a coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyJson(pub Vec<Vec<i64>>);

/// Polynomial arithmetic over a fixed field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    pub fq: &'a FieldCtx,
}

impl<'a> PolyRing<'a> {
    pub fn new(fq: &'a FieldCtx) -> Self {
        PolyRing { fq }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.fq.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.fq.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.fq.neg(c)).collect())
    }

    pub fn scale(&self, a: &Poly, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.fq.mul(x, c)).collect())
    }

    /// `a * x^i`.
    pub fn shift(&self, a: &Poly, i: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; i];
        coeffs.extend_from_slice(&a.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.fq.add(out[i + j], self.fq.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.fq.inv(b.lead())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = self.fq.mul(c, inv_lead);
            quot[top - db] = factor;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let idx = top - db + i;
                rem[idx] = self.fq.sub(rem[idx], self.fq.mul(factor, bc));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(a, b)?;
        if !r.is_zero() {
            return Err(Error::Invariant("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// `a` scaled to leading coefficient 1. The zero polynomial stays zero.
    pub fn monic(&self, a: &Poly) -> Poly {
        match self.fq.inv(a.lead()) {
            Ok(inv) => self.scale(a, inv),
            Err(_) => Poly::zero(),
        }
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("divisor is nonzero");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `g` monic (or zero) and `s a + t b = g`.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).expect("divisor is nonzero");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match self.fq.inv(r0.lead()) {
            Ok(inv) => (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv)),
            Err(_) => (Poly::zero(), Poly::zero(), Poly::zero()),
        }
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        let (g, s, _) = self.xgcd(a, m);
        if !g.is_one() {
            return Err(Error::NotAUnit);
        }
        self.rem(&s, m)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn mul_mod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m).expect("modulus is nonzero")
    }

    /// `a^e mod m`, exponent given as little-endian 64-bit limbs.
    pub fn pow_mod_big(&self, a: &Poly, e: &[u64], m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m).expect("modulus is nonzero");
        let mut base = self.rem(a, m).expect("modulus is nonzero");
        for &limb in e {
            let mut bits = limb;
            for _ in 0..64 {
                if bits & 1 == 1 {
                    acc = self.mul_mod(&acc, &base, m);
                }
                base = self.mul_mod(&base, &base, m);
                bits >>= 1;
            }
        }
        acc
    }

    pub fn pow_mod(&self, a: &Poly, e: u64, m: &Poly) -> Poly {
        self.pow_mod_big(a, &[e], m)
    }

    /// `a^q mod m` where `q` is the field order.
    pub fn frobenius_mod(&self, a: &Poly, m: &Poly) -> Poly {
        self.pow_mod(a, self.fq.order(), m)
    }

    pub fn eval(&self, a: &Poly, x: FieldElem) -> FieldElem {
        a.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| self.fq.add(self.fq.mul(acc, x), c))
    }

    /// Formal derivative.
    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(
            a.coeffs.iter().enumerate().skip(1).map(|(i, &c)| self.fq.mul(c, self.fq.from_int(i as i64))).collect(),
        )
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `x^{q^d} = x mod f`
    /// and `gcd(x^{q^{d/r}} - x, f) = 1` for every prime `r | d`.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let f = self.monic(f);
        let x = Poly::x();
        // frob[i] = x^{q^i} mod f
        let mut frob = vec![self.rem(&x, &f).expect("nonzero")];
        for i in 1..=d {
            let next = self.frobenius_mod(&frob[i - 1], &f);
            frob.push(next);
        }
        if self.sub(&frob[d], &frob[0]).degree().is_some() {
            return false;
        }
        prime_divisors(d as u64).into_iter().all(|r| {
            let h = self.sub(&frob[d / r as usize], &x);
            self.gcd(&h, &f).is_one()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(fq: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&v| fq.from_int(v)).collect())
    }

    #[test]
    fn xgcd_of_coprime_linears() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let r = f3.poly_ring();
        let (g, s, t) = r.xgcd(&p(&f3, &[-1, 1]), &p(&f3, &[1, 1]));
        assert!(g.is_one());
        assert_eq!(s, p(&f3, &[1]));
        assert_eq!(t, p(&f3, &[2]));
        let lhs = r.add(&r.mul(&s, &p(&f3, &[-1, 1])), &r.mul(&t, &p(&f3, &[1, 1])));
        assert!(lhs.is_one());
    }

    #[test]
    fn divmod_and_gcd_edge_cases() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        let r = f5.poly_ring();
        let (q, rem) = r.divmod(&p(&f5, &[0, 0, 0, 1]), &Poly::x()).unwrap();
        assert_eq!(q, p(&f5, &[0, 0, 1]));
        assert!(rem.is_zero());
        let f = p(&f5, &[1, 2, 3]);
        assert_eq!(r.gcd(&f, &Poly::zero()), r.monic(&f));
        assert_eq!(r.divmod(&f, &Poly::zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn canonical_order_is_degree_then_constant_first() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        let mut v = vec![p(&f5, &[0, 0, 1]), p(&f5, &[2, 1]), p(&f5, &[1, 1])];
        v.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(v, vec![p(&f5, &[1, 1]), p(&f5, &[2, 1]), p(&f5, &[0, 0, 1])]);
    }

    #[test]
    fn irreducibility() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let r = f3.poly_ring();
        assert!(r.is_irreducible(&p(&f3, &[1, 0, 1])));
        assert!(!r.is_irreducible(&p(&f3, &[-1, 0, 1])));
        assert!(r.is_irreducible(&p(&f3, &[-1, -1, 0, 1])));
        // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3: no roots, still reducible.
        assert!(!r.is_irreducible(&p(&f3, &[1, 0, 0, 0, 1])));
    }
}

//! The chain ring `K = F_{p^m}[x]/<f^N>` with `N = lambda p^k`.
//!
//! Elements are kept in `f`-adic form `sum_s pi^s b_s(x)` with `pi = f` and
//! every digit `b_s` of degree below `deg f`. Addition is digit-wise because
//! the expansion is `F_q`-linear; products go through the polynomial form.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{Poly, PolyRing};

#[derive(Debug)]
pub struct ChainCtx {
    pub fq: Arc<FieldCtx>,
    f: Poly,
    d: usize,
    lambda: usize,
    pk: usize,
    nil: usize,
    modulus: Poly,
}

/// `f`-adic digit vector of length `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainElem {
    digits: Vec<Poly>,
}

impl ChainElem {
    pub fn digits(&self) -> &[Poly] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> &Poly {
        &self.digits[i]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(Poly::is_zero)
    }
}

impl ChainCtx {
    pub fn new(fq: Arc<FieldCtx>, f: Poly, lambda: usize, pk: usize) -> Result<ChainCtx> {
        if lambda < 2 {
            return Err(Error::InvalidParams(format!("lambda must be >= 2, got {lambda}")));
        }
        let ring = PolyRing::new(&fq);
        if f.lead() != FieldElem::ONE || !ring.is_irreducible(&f) {
            return Err(Error::NotIrreducible(format!("{:?}", f.coeffs())));
        }
        let d = f.degree().expect("irreducible has positive degree");
        let nil = lambda * pk;
        let modulus = ring.pow(&f, nil as u64);
        Ok(ChainCtx { fq, f, d, lambda, pk, nil, modulus })
    }

    pub fn ring(&self) -> PolyRing<'_> {
        PolyRing::new(&self.fq)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// Degree of `f`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `p^k`.
    pub fn pk(&self) -> usize {
        self.pk
    }

    /// Nilpotency index `N = lambda p^k` of `pi`.
    pub fn nil(&self) -> usize {
        self.nil
    }

    /// `f^N`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of elements as a power of `q`: `d N`.
    pub fn log_q_size(&self) -> usize {
        self.d * self.nil
    }

    pub fn zero(&self) -> ChainElem {
        ChainElem { digits: vec![Poly::zero(); self.nil] }
    }

    pub fn one(&self) -> ChainElem {
        self.from_digit(Poly::one())
    }

    /// A residue `b` (degree < d) placed at digit 0.
    pub fn from_digit(&self, b: Poly) -> ChainElem {
        self.pi_pow_times(0, b)
    }

    pub fn from_field(&self, c: FieldElem) -> ChainElem {
        self.from_digit(Poly::constant(c))
    }

    /// `pi^s` (zero when `s >= N`).
    pub fn pi_pow(&self, s: usize) -> ChainElem {
        self.pi_pow_times(s, Poly::one())
    }

    /// `pi^s b` for a residue `b` of degree below `d`.
    pub fn pi_pow_times(&self, s: usize, b: Poly) -> ChainElem {
        debug_assert!(b.degree().is_none_or(|e| e < self.d));
        let mut out = self.zero();
        if s < self.nil {
            out.digits[s] = b;
        }
        out
    }

    /// Builds an element from explicit digits, padding with zeros. Digits past
    /// `N` must be zero; every digit must have degree below `d`.
    pub fn from_digits(&self, digits: Vec<Poly>) -> Result<ChainElem> {
        if digits.len() > self.nil && digits[self.nil..].iter().any(|b| !b.is_zero()) {
            return Err(Error::InvalidParams("too many pi-adic digits".into()));
        }
        if digits.iter().any(|b| b.degree().is_some_and(|e| e >= self.d)) {
            return Err(Error::InvalidParams("pi-adic digit degree exceeds deg f".into()));
        }
        let mut digits = digits;
        digits.resize(self.nil, Poly::zero());
        digits.truncate(self.nil);
        Ok(ChainElem { digits })
    }

    /// Reduces an arbitrary polynomial modulo `f^N` and digitizes it.
    pub fn from_poly(&self, a: &Poly) -> ChainElem {
        let ring = self.ring();
        let mut rest = ring.rem(a, &self.modulus).expect("nonzero modulus");
        let mut digits = Vec::with_capacity(self.nil);
        for _ in 0..self.nil {
            let (q, r) = ring.divmod(&rest, &self.f).expect("nonzero");
            digits.push(r);
            rest = q;
        }
        ChainElem { digits }
    }

    /// The representative of degree below `d N`.
    pub fn to_poly(&self, a: &ChainElem) -> Poly {
        let ring = self.ring();
        a.digits.iter().rev().fold(Poly::zero(), |acc, b| ring.add(&ring.mul(&acc, &self.f), b))
    }

    pub fn add(&self, a: &ChainElem, b: &ChainElem) -> ChainElem {
        let ring = self.ring();
        ChainElem { digits: a.digits.iter().zip(&b.digits).map(|(x, y)| ring.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &ChainElem, b: &ChainElem) -> ChainElem {
        let ring = self.ring();
        ChainElem { digits: a.digits.iter().zip(&b.digits).map(|(x, y)| ring.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &ChainElem) -> ChainElem {
        let ring = self.ring();
        ChainElem { digits: a.digits.iter().map(|x| ring.neg(x)).collect() }
    }

    pub fn scale(&self, a: &ChainElem, c: FieldElem) -> ChainElem {
        let ring = self.ring();
        ChainElem { digits: a.digits.iter().map(|x| ring.scale(x, c)).collect() }
    }

    pub fn mul(&self, a: &ChainElem, b: &ChainElem) -> ChainElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let va = self.pi_degree(a);
        let vb = self.pi_degree(b);
        if va + vb >= self.nil {
            return self.zero();
        }
        let prod = self.ring().mul(&self.to_poly(a), &self.to_poly(b));
        self.from_poly(&prod)
    }

    pub fn pow(&self, a: &ChainElem, mut e: u64) -> ChainElem {
        let mut acc = self.one();
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

    /// Index of the first nonzero digit, or `N` for zero.
    pub fn pi_degree(&self, a: &ChainElem) -> usize {
        a.digits.iter().position(|b| !b.is_zero()).unwrap_or(self.nil)
    }

    pub fn is_unit(&self, a: &ChainElem) -> bool {
        !a.digits[0].is_zero()
    }

    /// Inverse by Newton iteration `y <- y (2 - a y)`, starting from the
    /// inverse of digit 0 modulo `f`. Each step doubles the `pi`-adic precision.
    pub fn inv(&self, a: &ChainElem) -> Result<ChainElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let b0 = self.ring().inv_mod(&a.digits[0], &self.f)?;
        let mut y = self.from_digit(b0);
        let two = self.from_field(self.fq.from_int(2));
        let mut precision = 1;
        while precision < self.nil {
            let ay = self.mul(a, &y);
            y = self.mul(&y, &self.sub(&two, &ay));
            precision *= 2;
        }
        if self.mul(a, &y) != self.one() {
            return Err(Error::Invariant("Newton inverse failed to converge".into()));
        }
        Ok(y)
    }

    /// `pi^s a`.
    pub fn shift_up(&self, a: &ChainElem, s: usize) -> ChainElem {
        let mut digits = vec![Poly::zero(); self.nil];
        if s < self.nil {
            digits[s..].clone_from_slice(&a.digits[..self.nil - s]);
        }
        ChainElem { digits }
    }

    /// The canonical `c` with `pi^s c = a`, taking the top `s` digits of `c` to
    /// be zero. Requires `pi_degree(a) >= s`.
    pub fn shift_down(&self, a: &ChainElem, s: usize) -> ChainElem {
        debug_assert!(self.pi_degree(a) >= s);
        let mut digits = vec![Poly::zero(); self.nil];
        digits[..self.nil - s].clone_from_slice(&a.digits[s..self.nil]);
        ChainElem { digits }
    }

    /// `a mod pi^w`: digits at positions `>= w` cleared.
    pub fn truncate(&self, a: &ChainElem, w: usize) -> ChainElem {
        let mut out = a.clone();
        for b in out.digits.iter_mut().skip(w) {
            *b = Poly::zero();
        }
        out
    }

    /// Packs digits into an integer index: digit `i`, coefficient `c` contributes
    /// `idx(coeff) * q^{i d + c}`. Valid while `q^{dN}` fits in 128 bits.
    pub fn index_of(&self, a: &ChainElem) -> u128 {
        let q = self.fq.order() as u128;
        let mut acc = 0u128;
        for b in a.digits.iter().rev() {
            for c in (0..self.d).rev() {
                acc = acc * q + b.coeff(c).index() as u128;
            }
        }
        acc
    }

    pub fn from_index(&self, mut idx: u128) -> ChainElem {
        let q = self.fq.order() as u128;
        let mut digits = Vec::with_capacity(self.nil);
        for _ in 0..self.nil {
            let mut coeffs = Vec::with_capacity(self.d);
            for _ in 0..self.d {
                coeffs.push(self.fq.elem((idx % q) as u32));
                idx /= q;
            }
            digits.push(Poly::from_coeffs(coeffs));
        }
        ChainElem { digits }
    }

    /// All residues of degree below `d`, in index order.
    pub fn residues(&self) -> Vec<Poly> {
        let q = self.fq.order() as u128;
        let count = q.pow(self.d as u32);
        (0..count)
            .map(|mut idx| {
                let mut coeffs = Vec::with_capacity(self.d);
                for _ in 0..self.d {
                    coeffs.push(self.fq.elem((idx % q) as u32));
                    idx /= q;
                }
                Poly::from_coeffs(coeffs)
            })
            .collect()
    }

    /// Every element of `K`. Guarded by `limit` on the element count.
    pub fn elements(&self, limit: u128) -> Result<Vec<ChainElem>> {
        let total = (self.fq.order() as u128)
            .checked_pow(self.log_q_size() as u32)
            .filter(|&t| t <= limit)
            .ok_or_else(|| Error::TooLarge(format!("chain ring with more than {limit} elements")))?;
        Ok((0..total).map(|i| self.from_index(i)).collect())
    }

    pub fn serialize_elem(&self, a: &ChainElem) -> Vec<Vec<Vec<u32>>> {
        a.digits.iter().map(|b| b.serialize_with(&self.fq)).collect()
    }
}

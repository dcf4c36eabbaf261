//! The code ambients `R[x]/<x^L - gamma>` and `R[x]/<x^L - gamma^{-1}>` with
//! `R = F_{p^m}[u]/<u^{2 lambda}>`, `L = n p^k` and `gamma = delta + alpha u^2`.
//!
//! The two rings are distinguished at the type level so that elements of one
//! cannot be fed to arithmetic of the other.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::field::{FieldCtx, FieldElem};
use crate::linalg::Subspace;

/// Selects which unit `x^L` reduces to.
pub trait Twist: Copy + Default + fmt::Debug + Send + Sync + 'static {
    type Dual: Twist<Dual = Self>;
    const IS_DUAL: bool;
}

/// `x^L = gamma`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Primal;

/// `x^L = gamma^{-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Dual;

impl Twist for Primal {
    type Dual = Dual;
    const IS_DUAL: bool = false;
}

impl Twist for Dual {
    type Dual = Primal;
    const IS_DUAL: bool = true;
}

/// `sum_{i,j} c[i * 2 lambda + j] x^i u^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AmbientElem<S: Twist> {
    coeffs: Vec<FieldElem>,
    _twist: PhantomData<S>,
}

impl<S: Twist> fmt::Debug for AmbientElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple(if S::IS_DUAL { "Dual" } else { "Primal" })
            .field(&self.coeffs.iter().map(|c| c.index()).collect::<Vec<_>>())
            .finish()
    }
}

impl<S: Twist> AmbientElem<S> {
    pub fn flat(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Element of `R` as its `2 lambda` u-adic digits.
pub type RElem = Vec<FieldElem>;

#[derive(Debug)]
pub struct Ambient {
    pub fq: Arc<FieldCtx>,
    len: usize,
    e: usize,
    gamma: RElem,
    gamma_inv: RElem,
}

impl Ambient {
    pub fn new(fq: Arc<FieldCtx>, len: usize, lambda: usize, delta: FieldElem, alpha: FieldElem) -> Ambient {
        let e = 2 * lambda;
        let mut gamma = vec![FieldElem::ZERO; e];
        gamma[0] = delta;
        gamma[2] = alpha;
        // (delta + alpha u^2)^{-1} = delta^{-1} sum_j (-delta^{-1} alpha u^2)^j
        let dinv = fq.inv(delta).expect("delta is nonzero");
        let ratio = fq.neg(fq.mul(dinv, alpha));
        let mut gamma_inv = vec![FieldElem::ZERO; e];
        let mut term = dinv;
        for j in 0..lambda {
            gamma_inv[2 * j] = term;
            term = fq.mul(term, ratio);
        }
        Ambient { fq, len, e, gamma, gamma_inv }
    }

    /// Code length `L`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Nilpotency index `2 lambda` of `u`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// Number of `F_q` coordinates of one element.
    pub fn width(&self) -> usize {
        self.len * self.e
    }

    pub fn gamma(&self) -> &RElem {
        &self.gamma
    }

    pub fn gamma_inv(&self) -> &RElem {
        &self.gamma_inv
    }

    /// The unit `x^L` reduces to in ring `S`.
    pub fn unit<S: Twist>(&self) -> &RElem {
        if S::IS_DUAL {
            &self.gamma_inv
        } else {
            &self.gamma
        }
    }

    pub fn r_mul(&self, a: &[FieldElem], b: &[FieldElem]) -> RElem {
        let fq = &self.fq;
        let mut out = vec![FieldElem::ZERO; self.e];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(self.e - i) {
                out[i + j] = fq.add(out[i + j], fq.mul(x, y));
            }
        }
        out
    }

    /// Inverse of a unit of `R`: `a0^{-1} sum_j (-n)^j` with `a = a0 (1 + n)`.
    pub fn r_inv(&self, a: &[FieldElem]) -> Option<RElem> {
        let fq = &self.fq;
        let inv0 = fq.inv(a[0]).ok()?;
        let mut nil: RElem = a.iter().map(|&c| fq.neg(fq.mul(c, inv0))).collect();
        nil[0] = FieldElem::ZERO;
        let mut term = self.r_const(FieldElem::ONE);
        let mut acc = term.clone();
        for _ in 1..self.e {
            term = self.r_mul(&term, &nil);
            acc = self.r_add(&acc, &term);
        }
        Some(acc.iter().map(|&c| fq.mul(c, inv0)).collect())
    }

    pub fn r_const(&self, c: FieldElem) -> RElem {
        let mut r = vec![FieldElem::ZERO; self.e];
        r[0] = c;
        r
    }

    pub fn r_add(&self, a: &[FieldElem], b: &[FieldElem]) -> RElem {
        a.iter().zip(b).map(|(&x, &y)| self.fq.add(x, y)).collect()
    }

    pub fn zero<S: Twist>(&self) -> AmbientElem<S> {
        self.from_flat(vec![FieldElem::ZERO; self.width()])
    }

    pub fn one<S: Twist>(&self) -> AmbientElem<S> {
        self.monomial(FieldElem::ONE, 0, 0)
    }

    /// `c x^i u^j`.
    /// Zero when `j >= 2 lambda`; `i` must be below `L`.
    pub fn monomial<S: Twist>(&self, c: FieldElem, i: usize, j: usize) -> AmbientElem<S> {
        let mut v = vec![FieldElem::ZERO; self.width()];
        if j < self.e {
            v[i * self.e + j] = c;
        }
        self.from_flat(v)
    }

    pub fn from_flat<S: Twist>(&self, coeffs: Vec<FieldElem>) -> AmbientElem<S> {
        assert_eq!(coeffs.len(), self.width());
        AmbientElem { coeffs, _twist: PhantomData }
    }

    /// From `L` coefficients in `R`.
    pub fn from_r_coeffs<S: Twist>(&self, coeffs: &[RElem]) -> AmbientElem<S> {
        let mut v = vec![FieldElem::ZERO; self.width()];
        for (i, c) in coeffs.iter().enumerate() {
            v[i * self.e..i * self.e + c.len()].copy_from_slice(c);
        }
        self.from_flat(v)
    }

    /// Coefficient of `x^i` in `R`.
    pub fn coeff<'a, S: Twist>(&self, a: &'a AmbientElem<S>, i: usize) -> &'a [FieldElem] {
        &a.coeffs[i * self.e..(i + 1) * self.e]
    }

    /// The `L x 2 lambda` coefficient matrix.
    pub fn matrix<S: Twist>(&self, a: &AmbientElem<S>) -> Vec<RElem> {
        (0..self.len).map(|i| self.coeff(a, i).to_vec()).collect()
    }

    pub fn add<S: Twist>(&self, a: &AmbientElem<S>, b: &AmbientElem<S>) -> AmbientElem<S> {
        self.from_flat(self.r_add(&a.coeffs, &b.coeffs))
    }

    pub fn sub<S: Twist>(&self, a: &AmbientElem<S>, b: &AmbientElem<S>) -> AmbientElem<S> {
        self.from_flat(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.fq.sub(x, y)).collect())
    }

    pub fn scale<S: Twist>(&self, a: &AmbientElem<S>, c: FieldElem) -> AmbientElem<S> {
        self.from_flat(a.coeffs.iter().map(|&x| self.fq.mul(x, c)).collect())
    }

    /// Multiplication by a constant of `R`.
    pub fn r_scale<S: Twist>(&self, a: &AmbientElem<S>, r: &[FieldElem]) -> AmbientElem<S> {
        let mut v = Vec::with_capacity(self.width());
        for i in 0..self.len {
            v.extend(self.r_mul(self.coeff(a, i), r));
        }
        self.from_flat(v)
    }

    pub fn mul<S: Twist>(&self, a: &AmbientElem<S>, b: &AmbientElem<S>) -> AmbientElem<S> {
        let mut low = vec![vec![FieldElem::ZERO; self.e]; self.len];
        let mut high = vec![vec![FieldElem::ZERO; self.e]; self.len];
        for i in 0..self.len {
            let ai = self.coeff(a, i);
            if ai.iter().all(|c| c.is_zero()) {
                continue;
            }
            for l in 0..self.len {
                let bl = self.coeff(b, l);
                if bl.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let prod = self.r_mul(ai, bl);
                let slot = if i + l < self.len { &mut low[i + l] } else { &mut high[i + l - self.len] };
                *slot = self.r_add(slot, &prod);
            }
        }
        let unit = self.unit::<S>();
        let out: Vec<RElem> = low.iter().zip(&high).map(|(lo, hi)| self.r_add(lo, &self.r_mul(hi, unit))).collect();
        self.from_r_coeffs(&out)
    }

    /// `x a`: the constacyclic shift.
    pub fn x_shift<S: Twist>(&self, a: &AmbientElem<S>) -> AmbientElem<S> {
        let mut out = Vec::with_capacity(self.width());
        out.extend(self.r_mul(self.coeff(a, self.len - 1), self.unit::<S>()));
        out.extend_from_slice(&a.coeffs[..(self.len - 1) * self.e]);
        self.from_flat(out)
    }

    pub fn x_pow_times<S: Twist>(&self, a: &AmbientElem<S>, i: usize) -> AmbientElem<S> {
        (0..i).fold(a.clone(), |acc, _| self.x_shift(&acc))
    }

    /// `[a, b] = sum_i a_i b_i` in `R`. Accepts elements of either ring since
    /// it only reads coordinates.
    pub fn inner<S: Twist, T: Twist>(&self, a: &AmbientElem<S>, b: &AmbientElem<T>) -> RElem {
        let mut acc = vec![FieldElem::ZERO; self.e];
        for i in 0..self.len {
            acc = self.r_add(&acc, &self.r_mul(self.coeff(a, i), self.coeff(b, i)));
        }
        acc
    }

    /// `a(x^{-1}) = a_0 + unit_S sum_{i >= 1} a_i x^{L-i}`, landing in the other ring.
    pub fn tau<S: Twist>(&self, a: &AmbientElem<S>) -> AmbientElem<S::Dual> {
        let unit = self.unit::<S>();
        let mut out = vec![vec![FieldElem::ZERO; self.e]; self.len];
        out[0] = self.coeff(a, 0).to_vec();
        for i in 1..self.len {
            out[self.len - i] = self.r_mul(self.coeff(a, i), unit);
        }
        self.from_r_coeffs(&out)
    }

    /// `F_q`-span of `{y^l u^j x^i g}` over all generators: the code generated
    /// by `gens` as a subspace of `F_q^{2 lambda L}`.
    pub fn span<S: Twist>(&self, gens: &[AmbientElem<S>]) -> Subspace {
        let mut sub = Subspace::new(self.width());
        let basis: Vec<FieldElem> = field_basis(&self.fq);
        for g in gens {
            let mut xi = g.clone();
            for _ in 0..self.len {
                let mut uj = xi.clone();
                for _ in 0..self.e {
                    if uj.is_zero() {
                        break;
                    }
                    for &y in &basis {
                        sub.insert(&self.fq, self.scale(&uj, y).coeffs);
                    }
                    uj = self.r_scale(&uj, &self.u());
                }
                xi = self.x_shift(&xi);
            }
        }
        sub
    }

    /// `sum_i c_i x^i` for a polynomial of any degree, reduced in ring `S`.
    pub fn from_poly<S: Twist>(&self, poly: &crate::poly::Poly) -> AmbientElem<S> {
        let mut acc = self.zero::<S>();
        let mut xi = self.one::<S>();
        for &c in poly.coeffs() {
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(&xi, c));
            }
            xi = self.x_shift(&xi);
        }
        acc
    }

    pub fn pow<S: Twist>(&self, a: &AmbientElem<S>, e: usize) -> AmbientElem<S> {
        (0..e).fold(self.one::<S>(), |acc, _| self.mul(&acc, a))
    }

    /// `u` as an element of `R`.
    pub fn u(&self) -> RElem {
        let mut r = vec![FieldElem::ZERO; self.e];
        r[1] = FieldElem::ONE;
        r
    }

    /// Packs an element into an integer key, base `q`, first coordinate least
    /// significant. Valid while `q^{width}` fits in 128 bits.
    pub fn key<S: Twist>(&self, a: &AmbientElem<S>) -> u128 {
        let q = self.fq.order() as u128;
        a.coeffs.iter().rev().fold(0u128, |acc, c| acc * q + c.index() as u128)
    }

    pub fn from_key<S: Twist>(&self, mut key: u128) -> AmbientElem<S> {
        let q = self.fq.order() as u128;
        let mut v = Vec::with_capacity(self.width());
        for _ in 0..self.width() {
            v.push(self.fq.elem((key % q) as u32));
            key /= q;
        }
        self.from_flat(v)
    }
}

/// `1, y, ..., y^{m-1}`: an `F_p`-basis of `F_q`.
pub fn field_basis(fq: &FieldCtx) -> Vec<FieldElem> {
    (0..fq.degree())
        .map(|i| {
            let mut c = vec![0i64; fq.degree()];
            c[i] = 1;
            fq.from_coeffs(&c).expect("length m")
        })
        .collect()
}

//! Global codes: ideals of `R[x]/<x^L - gamma>` assembled from one local ideal
//! per irreducible factor of `x^n - delta0`.
//!
//! The pipeline is
//!
//! ```text
//! K_1 + uK_1  x ... x  K_r + uK_r  --CRT-->  A + uA  --Psi-->  R[x]/<x^L - gamma>
//! ```
//!
//! where `A = F_q[x]/<(x^n - delta0)^N>` and `u^2 = beta = alpha^{-1}(x^L - delta)`
//! in `A + uA`. `Psi` rewrites each component in base `beta` and sends
//! `beta^j` to `u^{2j}`.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, AmbientElem, Dual, Primal, Twist};
use crate::crt::CrtData;
use crate::error::{Error, Result};
use crate::factor::{binomial, factor_xn_minus};
use crate::field::{FieldCtx, FieldElem};
use crate::ideal::{count_by_generators_local, count_ideals, enumerate_ideals, IdealDesc, IdealJson};
use crate::poly::Poly;
use crate::quad::{QuadCtx, QuadElem};

/// Everything derived from `(p, m, n, k, lambda, delta, alpha)`.
#[derive(Debug)]
pub struct CodeParams {
    pub fq: Arc<FieldCtx>,
    pub n: usize,
    pub k: u32,
    pub lambda: usize,
    /// `p^k`.
    pub pk: usize,
    pub delta: FieldElem,
    pub alpha: FieldElem,
    pub delta0: FieldElem,
    pub factors: Vec<Poly>,
    pub crt: CrtData,
    pub quads: Vec<QuadCtx>,
    pub ambient: Ambient,
    /// `alpha^{-1}(x^L - delta)`.
    pub beta: Poly,
    /// `e_j = Psi(eps_j)`.
    pub idempotents: Vec<AmbientElem<Primal>>,
}

/// Element `xi0 + u xi1` of `A + uA`.
pub type AuElem = (Poly, Poly);

impl CodeParams {
    pub fn new(
        fq: Arc<FieldCtx>,
        n: usize,
        k: u32,
        lambda: usize,
        delta: FieldElem,
        alpha: FieldElem,
        seed: u64,
    ) -> Result<CodeParams> {
        if lambda < 2 {
            return Err(Error::InvalidParams(format!("lambda must be >= 2, got {lambda}")));
        }
        if delta.is_zero() || alpha.is_zero() {
            return Err(Error::InvalidParams("delta and alpha must be nonzero".into()));
        }
        let p = fq.characteristic();
        let pk = p.checked_pow(k).filter(|&v| v <= 1 << 16).ok_or_else(|| Error::TooLarge(format!("p^k = {p}^{k}")))?
            as usize;
        let delta0 = fq.pk_root(delta, k)?;
        let factors = factor_xn_minus(&fq, delta0, n, seed)?;
        let crt = CrtData::new(&fq, &factors, n, delta0, lambda, pk, alpha)?;
        let quads = crt.chains.iter().zip(&crt.omegas).map(|(c, w)| QuadCtx::new(c.clone(), w.clone())).collect();
        let len = n * pk;
        let ambient = Ambient::new(fq.clone(), len, lambda, delta, alpha);
        let ring = fq.poly_ring();
        let beta = ring.scale(&binomial(&fq, len, delta), fq.inv(alpha)?);
        let mut params = CodeParams {
            fq,
            n,
            k,
            lambda,
            pk,
            delta,
            alpha,
            delta0,
            factors,
            crt,
            quads,
            ambient,
            beta,
            idempotents: Vec::new(),
        };
        params.idempotents =
            params.crt.eps.iter().map(|e| params.psi_forward(e, &Poly::zero())).collect::<Result<_>>()?;
        Ok(params)
    }

    /// Parameters from integer inputs; field elements are coefficient lists.
    #[allow(clippy::too_many_arguments)]
    pub fn from_ints(
        p: u64,
        m: usize,
        n: usize,
        k: u32,
        lambda: usize,
        delta: &[i64],
        alpha: &[i64],
        seed: u64,
    ) -> Result<CodeParams> {
        let fq = Arc::new(FieldCtx::new(p, m, None)?);
        let delta = fq.from_coeffs(delta)?;
        let alpha = fq.from_coeffs(alpha)?;
        CodeParams::new(fq, n, k, lambda, delta, alpha, seed)
    }

    /// Number of irreducible factors `r`.
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// Code length `n p^k`.
    pub fn len(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ambient.is_empty()
    }

    /// `N = lambda p^k`.
    pub fn nil(&self) -> usize {
        self.lambda * self.pk
    }

    /// `log_p |R^L| = 2 lambda m L`.
    pub fn ambient_logp(&self) -> usize {
        2 * self.lambda * self.fq.degree() * self.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree().expect("nonconstant")).collect()
    }

    /// Reduction modulo `(x^n - delta0)^N`.
    pub fn reduce_a(&self, a: &Poly) -> Poly {
        self.fq.poly_ring().rem(a, &self.crt.big_modulus).expect("nonzero modulus")
    }

    pub fn au_add(&self, a: &AuElem, b: &AuElem) -> AuElem {
        let ring = self.fq.poly_ring();
        (ring.add(&a.0, &b.0), ring.add(&a.1, &b.1))
    }

    /// Product in `A + uA` with `u^2 = beta`.
    pub fn au_mul(&self, a: &AuElem, b: &AuElem) -> AuElem {
        let ring = self.fq.poly_ring();
        let a1b1 = ring.mul(&a.1, &b.1);
        let c0 = ring.add(&ring.mul(&a.0, &b.0), &ring.mul(&self.beta, &a1b1));
        let c1 = ring.add(&ring.mul(&a.0, &b.1), &ring.mul(&a.1, &b.0));
        (self.reduce_a(&c0), self.reduce_a(&c1))
    }

    /// Base-`beta` digits of `xi`, each of degree below `L`, `lambda` of them.
    fn beta_digits(&self, xi: &Poly) -> Result<Vec<Poly>> {
        let bound = self.lambda * self.len();
        if let Some(deg) = xi.degree().filter(|&d| d >= bound) {
            return Err(Error::DegreeOverflow { deg, bound });
        }
        let ring = self.fq.poly_ring();
        let mut rest = xi.clone();
        let mut out = Vec::with_capacity(self.lambda);
        for _ in 0..self.lambda {
            let (q, r) = ring.divmod(&rest, &self.beta)?;
            out.push(r);
            rest = q;
        }
        Ok(out)
    }

    /// `Psi(xi0 + u xi1)`. Both components must have degree below `lambda L`.
    pub fn psi_forward(&self, xi0: &Poly, xi1: &Poly) -> Result<AmbientElem<Primal>> {
        let e = self.ambient.e();
        let mut flat = vec![FieldElem::ZERO; self.ambient.width()];
        for (parity, xi) in [xi0, xi1].into_iter().enumerate() {
            for (j, digit) in self.beta_digits(xi)?.iter().enumerate() {
                for (i, &c) in digit.coeffs().iter().enumerate() {
                    flat[i * e + 2 * j + parity] = c;
                }
            }
        }
        Ok(self.ambient.from_flat(flat))
    }

    pub fn psi_inverse(&self, a: &AmbientElem<Primal>) -> AuElem {
        let ring = self.fq.poly_ring();
        let e = self.ambient.e();
        let column = |j: usize| Poly::from_coeffs((0..self.len()).map(|i| a.flat()[i * e + j]).collect());
        let mut out = [Poly::zero(), Poly::zero()];
        for (parity, slot) in out.iter_mut().enumerate() {
            for j in (0..self.lambda).rev() {
                *slot = ring.add(&ring.mul(slot, &self.beta), &column(2 * j + parity));
            }
        }
        let [xi0, xi1] = out;
        (xi0, xi1)
    }

    /// `sum_j eps_j (a0_j + u a1_j)`.
    pub fn phi(&self, locals: &[QuadElem]) -> AuElem {
        let a0: Vec<_> = locals.iter().map(|q| q.a0.clone()).collect();
        let a1: Vec<_> = locals.iter().map(|q| q.a1.clone()).collect();
        (self.crt.assemble(&a0), self.crt.assemble(&a1))
    }

    /// Reduction of both components modulo each `f_j^N`.
    pub fn phi_inverse(&self, a: &AuElem) -> Vec<QuadElem> {
        (0..self.r()).map(|j| QuadElem { a0: self.crt.project(j, &a.0), a1: self.crt.project(j, &a.1) }).collect()
    }

    /// `Psi` of a single local element placed in component `j` and lifted to
    /// `A + uA` through its polynomial representatives.
    fn psi_of_local(&self, j: usize, x: &QuadElem) -> Result<AmbientElem<Primal>> {
        let chain = &self.crt.chains[j];
        self.psi_forward(&chain.to_poly(&x.a0), &chain.to_poly(&x.a1))
    }

    /// Total ideal count, `prod_j N(p^m, 2 lambda, p^k, d_j)`.
    pub fn count_codes(&self) -> BigUint {
        let p = self.fq.characteristic();
        self.degrees().iter().map(|&d| count_ideals(p, self.fq.degree(), self.k, self.lambda, d)).product()
    }

    /// Counts of codes with one generator and with two. A code is principal
    /// exactly when every local ideal is.
    pub fn count_by_generators(&self) -> (BigUint, BigUint) {
        let p = self.fq.characteristic();
        let n1: BigUint = self
            .degrees()
            .iter()
            .map(|&d| count_by_generators_local(p, self.fq.degree(), self.k, self.lambda, d).0)
            .product();
        let n2 = self.count_codes() - &n1;
        (n1, n2)
    }

    /// Whether `x^n - delta0` is irreducible.
    pub fn is_irreducible_case(&self) -> bool {
        self.r() == 1
    }

    pub fn params_json(&self) -> ParamsJson {
        ParamsJson {
            p: self.fq.characteristic(),
            m: self.fq.degree(),
            n: self.n,
            k: self.k,
            lambda: self.lambda,
            delta: self.fq.to_coeffs(self.delta).into_iter().map(i64::from).collect(),
            alpha: self.fq.to_coeffs(self.alpha).into_iter().map(i64::from).collect(),
            field_modulus: self.fq.modulus(),
        }
    }
}

/// A code as one local ideal per factor, in canonical factor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeDesc {
    pub locals: Vec<IdealDesc>,
}

impl CodeDesc {
    pub fn new(locals: Vec<IdealDesc>) -> CodeDesc {
        CodeDesc { locals }
    }

    pub fn validate(&self, params: &CodeParams) -> Result<()> {
        if self.locals.len() != params.r() {
            return Err(Error::InvalidDescriptor(format!(
                "expected {} local ideals, got {}",
                params.r(),
                self.locals.len()
            )));
        }
        for (d, q) in self.locals.iter().zip(&params.quads) {
            d.validate(&q.chain)?;
        }
        Ok(())
    }

    pub fn is_principal(&self) -> bool {
        self.locals.iter().all(IdealDesc::is_principal)
    }

    pub fn size_logp(&self, params: &CodeParams) -> Result<usize> {
        self.validate(params)?;
        self.locals.iter().zip(&params.quads).map(|(d, q)| d.size_logp(&q.chain)).sum()
    }

    /// Local generator pairs, one per factor.
    fn local_generators(&self, params: &CodeParams) -> Result<Vec<[QuadElem; 2]>> {
        self.validate(params)?;
        self.locals.iter().zip(&params.quads).map(|(d, q)| d.generators(q).map(|g| [g.g1, g.g2])).collect()
    }

    /// Global generators `theta_s = sum_j e_j Psi(beta_js)`; the second one is
    /// present only when some local ideal needs two generators.
    pub fn build(&self, params: &CodeParams) -> Result<Vec<AmbientElem<Primal>>> {
        let gens = self.local_generators(params)?;
        let amb = &params.ambient;
        let count = if self.is_principal() { 1 } else { 2 };
        (0..count)
            .map(|s| {
                gens.iter().enumerate().try_fold(amb.zero(), |acc, (j, g)| {
                    let term = amb.mul(&params.idempotents[j], &params.psi_of_local(j, &g[s])?);
                    Ok(amb.add(&acc, &term))
                })
            })
            .collect()
    }

    /// Same generators computed as `Psi(Phi(beta_1s, ..., beta_rs))`.
    pub fn build_via_crt(&self, params: &CodeParams) -> Result<Vec<AmbientElem<Primal>>> {
        let gens = self.local_generators(params)?;
        let count = if self.is_principal() { 1 } else { 2 };
        (0..count)
            .map(|s| {
                let locals: Vec<QuadElem> = gens.iter().map(|g| g[s].clone()).collect();
                let (xi0, xi1) = params.phi(&locals);
                params.psi_forward(&xi0, &xi1)
            })
            .collect()
    }

    /// Membership through `Psi^{-1}` and the CRT projections.
    pub fn contains(&self, params: &CodeParams, c: &AmbientElem<Primal>) -> Result<bool> {
        self.validate(params)?;
        let locals = params.phi_inverse(&params.psi_inverse(c));
        for ((d, q), x) in self.locals.iter().zip(&params.quads).zip(&locals) {
            if !d.contains(q, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Descriptor whose code, mapped by `tau`, is the dual code.
    pub fn annihilator(&self, params: &CodeParams) -> Result<CodeDesc> {
        self.validate(params)?;
        let locals =
            self.locals.iter().zip(&params.quads).map(|(d, q)| d.annihilator(&q.chain)).collect::<Result<_>>()?;
        Ok(CodeDesc { locals })
    }

    /// Generators of the dual code, `sum_j tau(e_j) tau(Psi(Ann generators))`,
    /// computed in the ring with `x^L = gamma^{-1}`.
    pub fn dual_generators(&self, params: &CodeParams) -> Result<Vec<AmbientElem<Dual>>> {
        let ann = self.annihilator(params)?;
        let gens = ann.local_generators(params)?;
        let amb = &params.ambient;
        let count = if ann.is_principal() { 1 } else { 2 };
        (0..count)
            .map(|s| {
                gens.iter().enumerate().try_fold(amb.zero::<Dual>(), |acc, (j, g)| {
                    let ej = amb.tau(&params.idempotents[j]);
                    let term = amb.mul(&ej, &amb.tau(&params.psi_of_local(j, &g[s])?));
                    Ok(amb.add(&acc, &term))
                })
            })
            .collect()
    }

    /// Membership in the dual code.
    pub fn dual_contains(&self, params: &CodeParams, h: &AmbientElem<Dual>) -> Result<bool> {
        self.annihilator(params)?.contains(params, &params.ambient.tau(h))
    }

    pub fn to_json(&self, params: &CodeParams) -> CodeJson {
        CodeJson {
            params: params.params_json(),
            locals: self.locals.iter().zip(&params.quads).map(|(d, q)| IdealJson::from_desc(&q.chain, d)).collect(),
        }
    }

    pub fn from_json(params: &CodeParams, json: &CodeJson) -> Result<CodeDesc> {
        if json.params.field_modulus != params.fq.modulus() {
            return Err(Error::InvalidParams("field modulus does not match the parameters".into()));
        }
        let locals =
            json.locals.iter().zip(&params.quads).map(|(l, q)| l.to_desc(&q.chain)).collect::<Result<Vec<_>>>()?;
        let desc = CodeDesc { locals };
        if json.locals.len() != params.r() {
            return Err(Error::InvalidDescriptor(format!(
                "expected {} local ideals, got {}",
                params.r(),
                json.locals.len()
            )));
        }
        desc.validate(params)?;
        Ok(desc)
    }
}

/// Every code, as the Cartesian product of the local enumerations with the
/// last factor varying fastest.
pub fn enumerate_codes(params: &CodeParams) -> impl Iterator<Item = CodeDesc> + '_ {
    let lists: Vec<Vec<IdealDesc>> = params.quads.iter().map(|q| enumerate_ideals(&q.chain).collect()).collect();
    let r = lists.len();
    let mut idx = vec![0usize; r];
    let mut done = lists.iter().any(Vec::is_empty);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let desc = CodeDesc { locals: idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect() };
        done = true;
        for pos in (0..r).rev() {
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        Some(desc)
    })
}

/// `[x^i g, h] = 0` for every generator pair and every shift `i < L`.
pub fn check_orthogonal<S: Twist>(amb: &Ambient, gens: &[AmbientElem<S>], dual_gens: &[AmbientElem<S::Dual>]) -> bool {
    gens.iter().all(|g| {
        let mut shifted = g.clone();
        (0..amb.len()).all(|_| {
            let ok = dual_gens.iter().all(|h| amb.inner(&shifted, h).iter().all(|c| c.is_zero()));
            shifted = amb.x_shift(&shifted);
            ok
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub k: u32,
    pub lambda: usize,
    pub delta: Vec<i64>,
    pub alpha: Vec<i64>,
    pub field_modulus: Vec<u64>,
}

impl ParamsJson {
    pub fn build(&self, seed: u64) -> Result<CodeParams> {
        let fq = Arc::new(FieldCtx::new(self.p, self.m, Some(&self.field_modulus))?);
        let delta = fq.from_coeffs(&self.delta)?;
        let alpha = fq.from_coeffs(&self.alpha)?;
        CodeParams::new(fq, self.n, self.k, self.lambda, delta, alpha, seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub params: ParamsJson,
    pub locals: Vec<IdealJson>,
}

/// Serializes generators as `L x 2 lambda` matrices of field-element
/// coefficient lists.
pub fn generators_json<S: Twist>(amb: &Ambient, gens: &[AmbientElem<S>]) -> Vec<Vec<Vec<Vec<u32>>>> {
    gens.iter()
        .map(|g| amb.matrix(g).iter().map(|row| row.iter().map(|&c| amb.fq.to_coeffs(c)).collect()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> CodeParams {
        CodeParams::from_ints(5, 1, 1, 1, 2, &[2], &[3], 0).unwrap()
    }

    #[test]
    fn psi_named_values() {
        let params = p5();
        let fq = &params.fq;
        let amb = &params.ambient;
        for i in 0..5 {
            let xi = Poly::monomial(FieldElem::ONE, i);
            assert_eq!(params.psi_forward(&xi, &Poly::zero()).unwrap(), amb.monomial(FieldElem::ONE, i, 0));
        }
        let u2: AmbientElem<Primal> = amb.monomial(FieldElem::ONE, 0, 2);
        assert_eq!(params.psi_forward(&params.beta, &Poly::zero()).unwrap(), u2);
        let x5 = Poly::monomial(FieldElem::ONE, 5);
        assert_eq!(params.psi_forward(&x5, &Poly::zero()).unwrap(), amb.from_r_coeffs(&[amb.gamma().clone()]));
        let too_big = Poly::monomial(FieldElem::ONE, 10);
        assert!(matches!(
            params.psi_forward(&too_big, &Poly::zero()),
            Err(Error::DegreeOverflow { deg: 10, bound: 10 })
        ));
        assert_eq!(params.delta0, fq.from_int(2));
    }

    #[test]
    fn counts_at_p5() {
        let params = p5();
        assert_eq!(params.count_codes(), 431u32.into());
        let (n1, n2) = params.count_by_generators();
        assert_eq!((n1, n2), (72u32.into(), 359u32.into()));
        assert_eq!(enumerate_codes(&params).filter(|c| c.is_principal()).count(), 72);
    }

    #[test]
    fn trivial_codes() {
        let params = p5();
        let amb = &params.ambient;
        let unit = CodeDesc::new(vec![IdealDesc::II { s: 0 }]);
        assert_eq!(unit.build(&params).unwrap(), vec![amb.one()]);
        let zero = CodeDesc::new(vec![IdealDesc::II { s: 10 }]);
        assert_eq!(zero.dual_generators(&params).unwrap(), vec![amb.one::<Dual>()]);
    }

    #[test]
    fn i1_generator_in_closed_form() {
        // u (x - delta0)^{N-1} maps to alpha^{lambda-1} (x - delta0)^{p^k-1} u^{2 lambda - 1}.
        let params = p5();
        let fq = &params.fq;
        let ring = fq.poly_ring();
        let pi = Poly::from_coeffs(vec![fq.neg(params.delta0), FieldElem::ONE]);
        let x_part = ring.scale(&ring.pow(&pi, 4), fq.pow(params.alpha, 1));
        let mut rows = vec![vec![FieldElem::ZERO; 4]; 5];
        for (i, &c) in x_part.coeffs().iter().enumerate() {
            rows[i][3] = c;
        }
        let built = CodeDesc::new(vec![IdealDesc::I1]).build(&params).unwrap();
        assert_eq!(built, vec![params.ambient.from_r_coeffs(&rows)]);
    }
}

//! Idempotent decomposition of `A = F_{p^m}[x]/<(x^n - delta0)^N>` into the
//! local chain rings `K_j`, and the units `omega_j` with
//! `alpha^{-1} (x^{n p^k} - delta) = omega_j f_j^{p^k}` in `K_j`.

use std::sync::Arc;

use crate::chain::{ChainCtx, ChainElem};
use crate::error::{Error, Result};
use crate::factor::binomial;
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

#[derive(Debug)]
pub struct CrtData {
    pub chains: Vec<Arc<ChainCtx>>,
    /// `(x^n - delta0)^N`, the modulus of `A`.
    pub big_modulus: Poly,
    /// `F_j = (x^n - delta0) / f_j`.
    pub cofactors: Vec<Poly>,
    /// Bezout coefficient `g_j` with `g_j F_j^N + h_j f_j^N = 1`.
    pub bezout: Vec<Poly>,
    /// `eps_j = g_j F_j^N mod (x^n - delta0)^N`.
    pub eps: Vec<Poly>,
    pub omegas: Vec<ChainElem>,
    pub omega_invs: Vec<ChainElem>,
}

impl CrtData {
    pub fn new(
        fq: &Arc<FieldCtx>,
        factors: &[Poly],
        n: usize,
        delta0: FieldElem,
        lambda: usize,
        pk: usize,
        alpha: FieldElem,
    ) -> Result<CrtData> {
        if alpha.is_zero() {
            return Err(Error::ZeroInput);
        }
        let ring = fq.poly_ring();
        let nil = lambda * pk;
        let xn = binomial(fq, n, delta0);
        let big_modulus = ring.pow(&xn, nil as u64);
        let alpha_inv = fq.inv(alpha)?;
        let mut data = CrtData {
            chains: Vec::new(),
            big_modulus,
            cofactors: Vec::new(),
            bezout: Vec::new(),
            eps: Vec::new(),
            omegas: Vec::new(),
            omega_invs: Vec::new(),
        };
        for f in factors {
            let chain = Arc::new(ChainCtx::new(fq.clone(), f.clone(), lambda, pk)?);
            let cof = ring.div_exact(&xn, f)?;
            let cof_n = ring.pow(&cof, nil as u64);
            let (g, s, _t) = ring.xgcd(&cof_n, chain.modulus());
            if !g.is_one() {
                return Err(Error::Invariant("factors are not coprime".into()));
            }
            let eps = ring.rem(&ring.mul(&s, &cof_n), &data.big_modulus)?;
            let omega = chain.scale(&chain.from_poly(&ring.pow(&cof, pk as u64)), alpha_inv);
            let omega_inv =
                chain.scale(&chain.from_poly(&ring.mul(&s, &ring.pow(&cof, ((lambda - 1) * pk) as u64))), alpha);
            if chain.mul(&omega, &omega_inv) != chain.one() {
                return Err(Error::Invariant("omega inverse check failed".into()));
            }
            data.chains.push(chain);
            data.cofactors.push(cof);
            data.bezout.push(s);
            data.eps.push(eps);
            data.omegas.push(omega);
            data.omega_invs.push(omega_inv);
        }
        data.check_idempotents()?;
        Ok(data)
    }

    pub fn r(&self) -> usize {
        self.chains.len()
    }

    fn reduce(&self, a: &Poly) -> Poly {
        let fq = &self.chains[0].fq;
        fq.poly_ring().rem(a, &self.big_modulus).expect("nonzero modulus")
    }

    /// Sum to one, idempotence and pairwise orthogonality of the `eps_j`.
    pub fn check_idempotents(&self) -> Result<()> {
        let fq = &self.chains[0].fq;
        let ring = fq.poly_ring();
        let sum = self.eps.iter().fold(Poly::zero(), |acc, e| ring.add(&acc, e));
        if !self.reduce(&sum).is_one() {
            return Err(Error::Invariant("idempotents do not sum to 1".into()));
        }
        for (j, ej) in self.eps.iter().enumerate() {
            if self.reduce(&ring.mul(ej, ej)) != *ej {
                return Err(Error::Invariant(format!("eps_{j} is not idempotent")));
            }
            for el in &self.eps[j + 1..] {
                if !self.reduce(&ring.mul(ej, el)).is_zero() {
                    return Err(Error::Invariant("idempotents are not orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    /// Projection `A -> K_j`.
    pub fn project(&self, j: usize, a: &Poly) -> ChainElem {
        self.chains[j].from_poly(a)
    }

    /// `sum_j eps_j a_j`, the inverse of the projections.
    pub fn assemble(&self, locals: &[ChainElem]) -> Poly {
        let ring = self.chains[0].fq.poly_ring();
        let sum = locals.iter().enumerate().fold(Poly::zero(), |acc, (j, a)| {
            let lifted = self.chains[j].to_poly(a);
            ring.add(&acc, &ring.mul(&self.eps[j], &lifted))
        });
        self.reduce(&sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor_xn_minus;

    #[test]
    fn single_factor_is_trivial() {
        let fq = Arc::new(FieldCtx::new(5, 1, None).unwrap());
        let delta0 = fq.from_int(2);
        let fs = factor_xn_minus(&fq, delta0, 1, 0).unwrap();
        let crt = CrtData::new(&fq, &fs, 1, delta0, 2, 5, fq.from_int(3)).unwrap();
        assert!(crt.eps[0].is_one());
        let chain = &crt.chains[0];
        assert_eq!(crt.omegas[0], chain.from_field(fq.from_int(2)));
    }

    #[test]
    fn two_factors_over_f3() {
        let fq = Arc::new(FieldCtx::new(3, 1, None).unwrap());
        let fs = factor_xn_minus(&fq, FieldElem::ONE, 2, 0).unwrap();
        let alpha = FieldElem::ONE;
        let crt = CrtData::new(&fq, &fs, 2, FieldElem::ONE, 2, 3, alpha).unwrap();
        let ring = fq.poly_ring();
        for j in 0..2 {
            let chain = &crt.chains[j];
            let killed = ring.mul(&crt.eps[j], chain.modulus());
            assert!(ring.rem(&killed, &crt.big_modulus).unwrap().is_zero());
            // alpha^{-1}(x^{np^k} - delta) - omega pi^{p^k} = 0 in K_j
            let lhs = chain.from_poly(&binomial(&fq, 6, FieldElem::ONE));
            let rhs = chain.mul(&crt.omegas[j], &chain.pi_pow(3));
            assert_eq!(lhs, rhs);
        }
        let a = crt.chains[0].from_index(123);
        let b = crt.chains[1].from_index(456);
        let glued = crt.assemble(&[a.clone(), b.clone()]);
        assert_eq!(crt.project(0, &glued), a);
        assert_eq!(crt.project(1, &glued), b);
    }
}

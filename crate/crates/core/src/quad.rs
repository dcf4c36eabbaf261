//! The local ring `K + uK` with `u^2 = omega pi^{p^k}`.

use std::sync::Arc;

use crate::chain::{ChainCtx, ChainElem};

#[derive(Debug)]
pub struct QuadCtx {
    pub chain: Arc<ChainCtx>,
    pub omega: ChainElem,
    /// `omega pi^{p^k}`, the value of `u^2`.
    pub u2: ChainElem,
}

/// `a0 + u a1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a0: ChainElem,
    pub a1: ChainElem,
}

impl QuadCtx {
    pub fn new(chain: Arc<ChainCtx>, omega: ChainElem) -> QuadCtx {
        let u2 = chain.shift_up(&omega, chain.pk());
        QuadCtx { chain, omega, u2 }
    }

    pub fn elem(&self, a0: ChainElem, a1: ChainElem) -> QuadElem {
        QuadElem { a0, a1 }
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem { a0: self.chain.zero(), a1: self.chain.zero() }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem { a0: self.chain.one(), a1: self.chain.zero() }
    }

    pub fn u(&self) -> QuadElem {
        QuadElem { a0: self.chain.zero(), a1: self.chain.one() }
    }

    pub fn from_chain(&self, a: ChainElem) -> QuadElem {
        QuadElem { a0: a, a1: self.chain.zero() }
    }

    pub fn is_zero(&self, a: &QuadElem) -> bool {
        a.a0.is_zero() && a.a1.is_zero()
    }

    pub fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { a0: self.chain.add(&a.a0, &b.a0), a1: self.chain.add(&a.a1, &b.a1) }
    }

    pub fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { a0: self.chain.sub(&a.a0, &b.a0), a1: self.chain.sub(&a.a1, &b.a1) }
    }

    pub fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem { a0: self.chain.neg(&a.a0), a1: self.chain.neg(&a.a1) }
    }

    /// `(a0 + u a1)(b0 + u b1) = (a0 b0 + u^2 a1 b1) + u (a0 b1 + a1 b0)`.
    pub fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let k = &self.chain;
        let a1b1 = k.mul(&a.a1, &b.a1);
        QuadElem {
            a0: k.add(&k.mul(&a.a0, &b.a0), &k.mul(&self.u2, &a1b1)),
            a1: k.add(&k.mul(&a.a0, &b.a1), &k.mul(&a.a1, &b.a0)),
        }
    }

    /// `c (a0 + u a1)` for `c` in `K`.
    pub fn scale(&self, a: &QuadElem, c: &ChainElem) -> QuadElem {
        QuadElem { a0: self.chain.mul(&a.a0, c), a1: self.chain.mul(&a.a1, c) }
    }

    /// `u (a0 + u a1) = u^2 a1 + u a0`.
    pub fn times_u(&self, a: &QuadElem) -> QuadElem {
        QuadElem { a0: self.chain.mul(&self.u2, &a.a1), a1: a.a0.clone() }
    }

    /// Packs `(a0, a1)` into one integer key; `a1` is the high half.
    pub fn index_of(&self, a: &QuadElem) -> u128 {
        let base = (self.chain.fq.order() as u128).pow(self.chain.log_q_size() as u32);
        self.chain.index_of(&a.a1) * base + self.chain.index_of(&a.a0)
    }

    pub fn from_index(&self, idx: u128) -> QuadElem {
        let base = (self.chain.fq.order() as u128).pow(self.chain.log_q_size() as u32);
        QuadElem { a0: self.chain.from_index(idx % base), a1: self.chain.from_index(idx / base) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::poly::Poly;

    fn ctx() -> QuadCtx {
        let fq = Arc::new(FieldCtx::new(5, 1, None).unwrap());
        let f = Poly::from_coeffs(vec![fq.from_int(3), fq.from_int(1)]);
        let chain = Arc::new(ChainCtx::new(fq.clone(), f, 2, 5).unwrap());
        let omega = chain.from_field(fq.from_int(2));
        QuadCtx::new(chain, omega)
    }

    #[test]
    fn u_relations() {
        let q = ctx();
        let u = q.u();
        let uu = q.mul(&u, &u);
        assert_eq!(uu, q.from_chain(q.chain.mul(&q.omega, &q.chain.pi_pow(5))));
        let one_plus = q.add(&q.one(), &u);
        let one_minus = q.sub(&q.one(), &u);
        assert_eq!(q.mul(&one_plus, &one_minus), q.from_chain(q.chain.sub(&q.chain.one(), &q.u2)));
        let mut acc = q.one();
        for _ in 0..4 {
            acc = q.mul(&acc, &u);
        }
        assert!(q.is_zero(&acc));
        assert_eq!(q.times_u(&u), uu);
    }
}

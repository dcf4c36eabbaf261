use std::sync::Arc;

use chaincode::chain::ChainCtx;
use chaincode::factor::factor_xn_minus;
use chaincode::{Error, FieldCtx, FieldElem, Poly};
use proptest::prelude::*;

fn fields() -> Vec<FieldCtx> {
    [(3, 1), (3, 2), (3, 3), (5, 1), (7, 2), (11, 1)].iter().map(|&(p, m)| FieldCtx::new(p, m, None).unwrap()).collect()
}

proptest! {
    #[test]
    fn field_axioms(which in 0usize..6, a in 0u32..1_000_000, b in 0u32..1_000_000, c in 0u32..1_000_000) {
        let fs = fields();
        let f = &fs[which];
        let q = f.order() as u32;
        let (a, b, c) = (f.elem(a % q), f.elem(b % q), f.elem(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn poly_division_identity(seed in any::<u64>(), la in 0usize..12, lb in 1usize..8) {
        let f = FieldCtx::new(5, 1, None).unwrap();
        let ring = f.poly_ring();
        let coeffs = |s: u64, n: usize| (0..n).map(|i| f.from_int(((s >> (i % 60)) ^ (i as u64 * 7)) as i64)).collect::<Vec<_>>();
        let a = Poly::from_coeffs(coeffs(seed, la));
        let mut bc = coeffs(seed.rotate_left(17), lb);
        *bc.last_mut().unwrap() = FieldElem::ONE;
        let b = Poly::from_coeffs(bc);
        let (qq, r) = ring.divmod(&a, &b).unwrap();
        prop_assert_eq!(ring.add(&ring.mul(&qq, &b), &r), a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }
}

#[test]
fn inverse_exhaustive() {
    for f in fields() {
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
        assert!(matches!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero)));
    }
}

#[test]
fn pk_root_exhaustive() {
    for f in fields() {
        for k in 0..4u32 {
            assert!(matches!(f.pk_root(FieldElem::ZERO, k), Err(Error::ZeroInput)));
            for a in f.elements().filter(|a| !a.is_zero()) {
                let r = f.pk_root(a, k).unwrap();
                assert_eq!(f.pow(r, f.characteristic().pow(k)), a);
            }
        }
    }
}

#[test]
fn chain_ring_round_trips() {
    let fq = Arc::new(FieldCtx::new(3, 1, None).unwrap());
    for n in [1, 2, 4] {
        for f in factor_xn_minus(&fq, FieldElem::ONE, n, 0).unwrap() {
            let k = ChainCtx::new(fq.clone(), f, 2, 3).unwrap();
            let limit = 3u128.pow(8);
            let total = 3u128.pow((k.log_q_size()) as u32);
            let step = (total / limit).max(1);
            let mut idx = 0u128;
            while idx < total {
                let a = k.from_index(idx);
                assert_eq!(k.index_of(&a), idx);
                assert_eq!(k.from_poly(&k.to_poly(&a)), a);
                if k.is_unit(&a) {
                    assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
                }
                idx += step;
            }
        }
    }
}

use std::collections::HashSet;
use std::sync::Arc;

use chaincode::chain::ChainCtx;
use chaincode::crt::CrtData;
use chaincode::factor::factor_xn_minus;
use chaincode::ideal::{count_ideals, enumerate_ideals, ideal_equal_slow, IdealDesc, IdealJson};
use chaincode::quad::QuadCtx;
use chaincode::{FieldCtx, FieldElem};

fn local_ring(p: u64, m: usize, lambda: usize, k: u32, n: usize, alpha: i64) -> Vec<QuadCtx> {
    let fq = Arc::new(FieldCtx::new(p, m, None).unwrap());
    let pk = p.pow(k) as usize;
    let delta0 = FieldElem::ONE;
    let fs = factor_xn_minus(&fq, delta0, n, 0).unwrap();
    let crt = CrtData::new(&fq, &fs, n, delta0, lambda, pk, fq.from_int(alpha)).unwrap();
    crt.chains.iter().zip(&crt.omegas).map(|(c, w)| QuadCtx::new(c.clone(), w.clone())).collect()
}

fn check_invariants(q: &QuadCtx) {
    let k: &ChainCtx = &q.chain;
    let total = 2 * k.nil() * k.fq.degree() * k.d();
    let descs: Vec<IdealDesc> = enumerate_ideals(k).collect();
    let expected = count_ideals(
        k.fq.characteristic(),
        k.fq.degree(),
        k.pk().ilog(k.fq.characteristic() as usize),
        k.lambda(),
        k.d(),
    );
    assert_eq!(num_bigint::BigUint::from(descs.len()), expected);
    let mut stairs = HashSet::new();
    for d in &descs {
        let ann = d.annihilator(k).unwrap();
        assert_eq!(d.size_logp(k).unwrap() + ann.size_logp(k).unwrap(), total, "{d:?}");
        assert_eq!(&ann.annihilator(k).unwrap(), d);

        let g = d.generators(q).unwrap();
        let a = ann.generators(q).unwrap();
        for x in [&g.g1, &g.g2] {
            for y in [&a.g1, &a.g2] {
                assert!(q.is_zero(&q.mul(x, y)), "{d:?} not killed by {ann:?}");
            }
        }

        let stair = d.staircase(q).unwrap();
        assert_eq!(stair.colength(k) * k.d() * k.fq.degree(), d.size_logp(k).unwrap(), "{d:?}");
        // (a0, a1) -> (u^2 a1, a0) keeps every generator row inside.
        for x in [&g.g1, &g.g2] {
            assert!(IdealDesc::contains_with(&stair, q, &q.times_u(x)));
        }
        assert!(stairs.insert(stair), "duplicate ideal {d:?}");
        let json = IdealJson::from_desc(k, d);
        assert_eq!(&json.to_desc(k).unwrap(), d);
    }
}

#[test]
fn taxonomy_invariants_small() {
    for q in local_ring(3, 1, 2, 1, 1, 1) {
        check_invariants(&q);
    }
    for q in local_ring(3, 1, 3, 1, 1, 2) {
        check_invariants(&q);
    }
}

#[test]
fn taxonomy_invariants_wider() {
    for q in local_ring(5, 1, 2, 1, 1, 3) {
        check_invariants(&q);
    }
    // x^2 + 1 is irreducible over F_3: one factor of degree 2.
    for q in local_ring(3, 1, 2, 1, 4, 1) {
        check_invariants(&q);
    }
    for q in local_ring(3, 2, 2, 1, 1, 1) {
        check_invariants(&q);
    }
}

#[test]
fn distinct_by_slow_path() {
    let q = &local_ring(3, 1, 2, 1, 1, 1)[0];
    let descs: Vec<IdealDesc> = enumerate_ideals(&q.chain).collect();
    for (i, a) in descs.iter().enumerate() {
        for b in &descs[i + 1..] {
            assert!(!ideal_equal_slow(q, a, b).unwrap());
        }
    }
}

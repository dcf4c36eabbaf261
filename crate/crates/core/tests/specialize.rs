use chaincode::code::CodeParams;
use chaincode::specialize::{fmt_dual, fmt_gens, fmt_r, special_rows, DualConsts};
use chaincode::Error;

type Case = (u64, usize, u32, usize, &'static [i64], &'static [i64]);

#[test]
fn closed_forms_verify_across_parameters() {
    // (p, m, k, lambda, delta, alpha)
    let cases: [Case; 6] = [
        (5, 1, 1, 2, &[2], &[3]),
        (3, 1, 1, 3, &[2], &[1]),
        (5, 1, 1, 3, &[1], &[2]),
        (7, 1, 1, 2, &[3], &[1]),
        (3, 2, 1, 2, &[1], &[1]),
        (3, 1, 2, 2, &[2], &[1]),
    ];
    for (p, m, k, lambda, delta, alpha) in cases {
        let params = CodeParams::from_ints(p, m, 1, k, lambda, delta, alpha, 0).unwrap();
        let rows = special_rows(&params).unwrap();
        assert_eq!(num_bigint::BigUint::from(rows.len()), params.count_codes());
        for r in &rows {
            assert!(r.verified, "{p} {m} {k} {lambda}: {} {}", r.group, r.params);
        }
    }
}

#[test]
fn normal_forms_with_irreducible_quadratic() {
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[2], &[1], 0).unwrap();
    let rows = special_rows(&params).unwrap();
    assert!(rows.iter().all(|r| r.verified && r.dual.is_none()));
}

#[test]
fn worked_constants() {
    let params = CodeParams::from_ints(5, 1, 1, 1, 2, &[2], &[3], 0).unwrap();
    let fq = &params.fq;
    let c = DualConsts::new(&params).unwrap();
    assert_eq!(params.delta0, fq.from_int(2));
    assert_eq!(fmt_r(fq, params.ambient.gamma_inv()), "3+3u^2");
    assert_eq!(fmt_r(fq, &c.theta), "3");
    assert_eq!(fq.neg(c.theta_inv[0]), fq.from_int(3));
}

#[test]
fn worked_rows() {
    let params = CodeParams::from_ints(5, 1, 1, 1, 2, &[2], &[3], 0).unwrap();
    let fq = &params.fq;
    let rows = special_rows(&params).unwrap();
    let find = |g: &str| rows.iter().filter(|r| r.group == g).collect::<Vec<_>>().into_iter();
    let r = find("i-1").next().unwrap();
    assert_eq!((fmt_gens(fq, &r.generators).as_str(), r.size_logp), ("<pi^4*u^3>", 1));
    assert_eq!(fmt_dual(fq, r.dual.as_ref().unwrap()), "<u, pihat>");
    let r = find("iv-1-2").next().unwrap();
    assert_eq!(fmt_gens(fq, &r.generators), "<u^2, pi^4*u>");
    assert_eq!(fmt_dual(fq, r.dual.as_ref().unwrap()), "<pihat*u^2, u^3>");
    assert_eq!(r.size_logp, 11);
    let r = find("iv-1-3").next().unwrap();
    assert_eq!(fmt_gens(fq, &r.generators), "<pi*u^2, u^3>");
    assert_eq!(r.size_logp, 9);
    assert_eq!(find("iv-3-5").count(), 60);
    let ii = find("ii-2").map(|r| fmt_gens(fq, &r.generators)).collect::<Vec<_>>();
    assert!(ii.contains(&"<pi^3*u^2>".to_string()));
}

#[test]
fn several_factors_are_rejected() {
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[1], &[1], 0).unwrap();
    assert!(matches!(special_rows(&params), Err(Error::NotIrreducible(_))));
}

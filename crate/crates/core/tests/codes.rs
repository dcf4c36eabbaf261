use chaincode::code::{enumerate_codes, CodeParams};
use chaincode::verify::{code_checks, idempotent_identities, sample_codes, CODE_CHECKS};

fn check_all(params: &CodeParams, codes: &[chaincode::code::CodeDesc]) {
    for d in codes {
        let res = code_checks(params, d).unwrap();
        for (ok, name) in res.iter().zip(CODE_CHECKS) {
            assert!(ok, "{name} failed for {d:?}");
        }
    }
}

#[test]
fn every_code_single_factor() {
    for (p, m, lambda, delta, alpha) in
        [(3, 1, 2, &[1][..], &[1][..]), (3, 1, 3, &[2], &[1]), (5, 1, 2, &[2], &[3]), (3, 2, 2, &[0, 1], &[1])]
    {
        let params = CodeParams::from_ints(p, m, 1, 1, lambda, delta, alpha, 0).unwrap();
        let codes: Vec<_> = enumerate_codes(&params).collect();
        assert_eq!(num_bigint::BigUint::from(codes.len()), params.count_codes());
        check_all(&params, &codes);
    }
}

#[test]
fn two_factors() {
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[1], &[1], 0).unwrap();
    assert_eq!(params.r(), 2);
    assert!(idempotent_identities(&params).pass);
    assert_eq!(params.count_codes(), 1600u32.into());
    check_all(&params, &sample_codes(&params, 60, 3));
}

#[test]
fn three_factors_and_a_quadratic_factor() {
    // x^4 - 1 over F_5 splits into four linear factors; over F_3 it has a quadratic one.
    for (p, n) in [(5, 4), (3, 4)] {
        let params = CodeParams::from_ints(p, 1, n, 1, 2, &[1], &[1], 0).unwrap();
        assert!(idempotent_identities(&params).pass);
        check_all(&params, &sample_codes(&params, 12, 5));
    }
}

#[test]
fn irreducible_binomial_of_degree_two() {
    // x^2 - 2 is irreducible over F_3, so r = 1 with n = 2.
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[2], &[1], 0).unwrap();
    assert_eq!(params.r(), 1);
    check_all(&params, &enumerate_codes(&params).collect::<Vec<_>>());
}

#[test]
fn json_round_trip() {
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[1], &[1], 0).unwrap();
    for d in sample_codes(&params, 30, 9) {
        let json = serde_json::to_string(&d.to_json(&params)).unwrap();
        let back = chaincode::code::CodeDesc::from_json(&params, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}

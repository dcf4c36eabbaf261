use chaincode::code::CodeParams;
use chaincode::verify::{psi_homomorphism, psi_roundtrip_exhaustive};

fn assert_all(reports: &[chaincode::oracle::OracleReport]) {
    for r in reports {
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn psi_is_a_ring_map() {
    for (p, n, delta, alpha) in [(3, 1, 1, 1), (3, 2, 1, 1), (5, 1, 2, 3)] {
        let params = CodeParams::from_ints(p, 1, n, 1, 2, &[delta], &[alpha], 0).unwrap();
        assert_all(&psi_homomorphism(&params, 1000, 7).unwrap());
    }
}

#[test]
fn psi_is_a_ring_map_over_extension_field() {
    let params = CodeParams::from_ints(3, 2, 2, 1, 2, &[0, 1], &[1, 1], 0).unwrap();
    assert_all(&psi_homomorphism(&params, 200, 1).unwrap());
}

#[test]
fn psi_round_trip_is_exhaustive_identity() {
    let params = CodeParams::from_ints(3, 1, 1, 1, 2, &[1], &[1], 0).unwrap();
    let r = psi_round_trip(&params);
    assert!(r.pass, "{r:?}");
}

fn psi_round_trip(params: &CodeParams) -> chaincode::oracle::OracleReport {
    psi_roundtrip_exhaustive(params).unwrap()
}

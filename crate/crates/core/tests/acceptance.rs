//! One pass/fail line per acceptance criterion.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use chaincode::code::{check_orthogonal, enumerate_codes, CodeParams};
use chaincode::ideal::{count_by_generators_local, count_ideals, enumerate_ideals};
use chaincode::oracle::{
    bf_codewords, bf_condition4_filter, bf_submodules, quad_ideal_elements, ElementSet, AMBIENT_GUARD,
};
use chaincode::specialize::{fmt_r, listing_params, special_rows, DualConsts};
use chaincode::verify::{brute_force_checks, idempotent_identities, psi_homomorphism, sample_codes};
use num_bigint::BigUint;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: chaincode::Error) -> String {
    e.to_string()
}

fn group_sizes() -> Outcome {
    ensure(count_ideals(5, 1, 1, 2, 1) == BigUint::from(431u32), || "count_ideals(5,1,1,2,1) != 431".into())?;
    let params = listing_params().map_err(err)?;
    let rows = special_rows(&params).map_err(err)?;
    ensure(rows.len() == 431, || format!("{} rows", rows.len()))?;
    let mut sizes: Vec<(String, usize)> = Vec::new();
    for r in &rows {
        match sizes.last_mut() {
            Some((g, n)) if *g == r.group => *n += 1,
            _ => sizes.push((r.group.clone(), 1)),
        }
    }
    let got: Vec<usize> = sizes.iter().map(|s| s.1).collect();
    let want = [1, 5, 25, 25, 5, 1, 10, 1, 5, 25, 25, 5, 3, 1, 1, 3, 5, 15, 15, 75, 25, 40, 55, 60];
    ensure(got == want, || format!("group sizes {got:?}"))?;
    let unverified = rows.iter().filter(|r| !r.verified).count();
    ensure(unverified == 0, || format!("{unverified} rows fail orthogonality or span checks"))
}

fn oracle_counts() -> Outcome {
    let params = CodeParams::from_ints(3, 1, 1, 1, 2, &[1], &[1], 0).map_err(err)?;
    let q = &params.quads[0];
    let all = bf_submodules(&q.chain).map_err(err)?;
    ensure(all.len() == 2179, || format!("{} submodules", all.len()))?;
    let survivors = bf_condition4_filter(q).map_err(err)?;
    let expected = count_ideals(3, 1, 1, 2, 1);
    ensure(BigUint::from(survivors.len()) == expected, || format!("{} survivors vs {expected}", survivors.len()))?;
    let fq = &q.chain.fq;
    let bf: HashSet<ElementSet> = survivors
        .iter()
        .map(|(_, s)| ElementSet::from_subspace(fq, s, AMBIENT_GUARD))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let ours: HashSet<ElementSet> = enumerate_ideals(&q.chain)
        .map(|d| {
            let g = d.generators(q)?;
            quad_ideal_elements(q, &[g.g1, g.g2])
        })
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure(bf.len() == 40 && bf == ours, || "survivor sets differ from enumerated ideals".into())
}

fn cardinality_identity() -> Outcome {
    for lambda in [2, 3] {
        let params = CodeParams::from_ints(3, 1, 1, 1, lambda, &[1], &[1], 0).map_err(err)?;
        let k = &params.quads[0].chain;
        let total = 2 * lambda * 3;
        for d in enumerate_ideals(k) {
            let ann = d.annihilator(k).map_err(err)?;
            let sum = d.size_logp(k).map_err(err)? + ann.size_logp(k).map_err(err)?;
            ensure(sum == total, || format!("lambda={lambda} {d:?}: {sum} != {total}"))?;
            ensure(ann.annihilator(k).map_err(err)? == d, || format!("Ann(Ann({d:?})) differs"))?;
        }
    }
    Ok(())
}

fn explicit_sizes() -> Outcome {
    let params = CodeParams::from_ints(3, 1, 1, 1, 2, &[1], &[1], 0).map_err(err)?;
    let codes: Vec<_> = enumerate_codes(&params).collect();
    ensure(codes.len() == 40, || format!("{} codes", codes.len()))?;
    for d in &codes {
        let cw = bf_codewords(&params.ambient, &d.build(&params).map_err(err)?).map_err(err)?;
        let want = 3usize.pow(d.size_logp(&params).map_err(err)? as u32);
        ensure(cw.len() == want, || format!("{d:?}: {} codewords, expected {want}", cw.len()))?;
    }
    Ok(())
}

fn duality_ground_truth() -> Outcome {
    let params = CodeParams::from_ints(3, 1, 1, 1, 2, &[1], &[1], 0).map_err(err)?;
    for d in enumerate_codes(&params) {
        let (_, dual_ok) = brute_force_checks(&params, &d).map_err(err)?;
        ensure(dual_ok, || format!("{d:?}: dual differs from scanned complement"))?;
        let sum = d.size_logp(&params).map_err(err)?
            + d.annihilator(&params).map_err(err)?.size_logp(&params).map_err(err)?;
        ensure(sum == 12, || format!("{d:?}: sizes sum to {sum}"))?;
    }
    Ok(())
}

fn crt_two_factors() -> Outcome {
    let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[1], &[1], 0).map_err(err)?;
    ensure(params.delta0 == params.fq.from_int(1) && params.r() == 2, || "expected delta0 = 1 and r = 2".into())?;
    let idem = idempotent_identities(&params);
    ensure(idem.pass, || idem.got.clone())?;
    ensure(params.count_codes() == BigUint::from(1600u32), || format!("count {}", params.count_codes()))?;
    let sample = sample_codes(&params, 20, 2024);
    ensure(sample.len() == 20, || "sample size".into())?;
    for d in &sample {
        let g = d.build(&params).map_err(err)?;
        let h = d.dual_generators(&params).map_err(err)?;
        ensure(check_orthogonal(&params.ambient, &g, &h), || format!("{d:?} not orthogonal"))?;
    }
    Ok(())
}

fn psi_ring_map() -> Outcome {
    for (p, n, delta, alpha) in [(3, 1, 1, 1), (3, 2, 1, 1), (5, 1, 2, 3)] {
        let params = CodeParams::from_ints(p, 1, n, 1, 2, &[delta], &[alpha], 0).map_err(err)?;
        for r in psi_homomorphism(&params, 1000, 11).map_err(err)? {
            ensure(r.pass, || format!("{} at {}: {}", r.check, r.params, r.got))?;
        }
    }
    Ok(())
}

fn worked_constants() -> Outcome {
    let params = listing_params().map_err(err)?;
    let fq = &params.fq;
    ensure(params.delta0 == fq.from_int(2), || "delta0 != 2".into())?;
    let gi = fmt_r(fq, params.ambient.gamma_inv());
    ensure(gi == "3+3u^2", || format!("gamma^-1 = {gi}"))?;
    let c = DualConsts::new(&params).map_err(err)?;
    let theta = fmt_r(fq, &c.theta);
    ensure(theta == "3", || format!("theta = {theta}"))?;
    let neg_inv: Vec<_> = c.theta_inv.iter().map(|&x| fq.neg(x)).collect();
    let s = fmt_r(fq, &neg_inv);
    ensure(s == "3", || format!("-theta^-1 = {s}"))
}

fn generator_split() -> Outcome {
    let (one, two) = count_by_generators_local(5, 1, 1, 2, 1);
    ensure(one == BigUint::from(72u32) && two == BigUint::from(359u32), || format!("closed form ({one}, {two})"))?;
    let params = listing_params().map_err(err)?;
    let (n1, n2) = params.count_by_generators();
    ensure(n1 == one && n2 == two, || format!("count_by_generators ({n1}, {n2})"))?;
    let codes: Vec<_> = enumerate_codes(&params).collect();
    let principal = codes.iter().filter(|d| d.is_principal()).count();
    ensure((principal, codes.len() - principal) == (72, 359), || {
        format!("tally ({principal}, {})", codes.len() - principal)
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("count reproduction and listing group sizes", Duration::from_secs(10), group_sizes),
        ("oracle submodule census 2179 / 40 with bijection", Duration::from_secs(60), oracle_counts),
        ("cardinality identity and Ann(Ann(C)) = C", Duration::from_secs(10), cardinality_identity),
        ("explicit codeword counts for all 40 codes", Duration::from_secs(120), explicit_sizes),
        ("duals equal brute-force orthogonal complements", Duration::from_secs(300), duality_ground_truth),
        ("CRT with two factors: idempotents, 1600 codes, orthogonality", Duration::from_secs(120), crt_two_factors),
        ("psi is a ring isomorphism on random pairs", Duration::from_secs(30), psi_ring_map),
        ("worked constants delta0, gamma^-1, theta", Duration::from_secs(10), worked_constants),
        ("generator-count split N1 = 72, N2 = 359", Duration::from_secs(10), generator_split),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome =
            outcome.and_then(|_| ensure(elapsed <= *budget, || format!("took {elapsed:.2?}, budget {budget:?}")));
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                println!("FAIL criterion {}: {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Invariant suites over a parameter set, reported as pass/fail lines.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ambient::{AmbientElem, Dual, Primal};
use crate::code::{check_orthogonal, enumerate_codes, AuElem, CodeDesc, CodeParams};
use crate::error::{Error, Result};
use crate::factor::binomial;
use crate::ideal::{enumerate_ideals, IdealDesc};
use crate::oracle::{
    bf_codewords, bf_orthogonal_complement, orthogonal_complement_kernel, subspace_logp, ElementSet, OracleReport,
    AMBIENT_GUARD,
};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Random pairs for the ring-map checks.
    pub samples: usize,
    pub seed: u64,
    /// Codes to check; every code when the census is no larger.
    pub max_codes: usize,
    /// Run the explicit-set checks; fails with `TooLarge` past the guard.
    pub brute_force: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { samples: 1000, seed: 0, max_codes: 5000, brute_force: false }
    }
}

pub fn params_label(params: &CodeParams) -> String {
    let fq = &params.fq;
    format!(
        "p={} m={} n={} k={} lambda={} delta={:?} alpha={:?}",
        fq.characteristic(),
        fq.degree(),
        params.n,
        params.k,
        params.lambda,
        fq.to_coeffs(params.delta),
        fq.to_coeffs(params.alpha)
    )
}

fn random_poly(params: &CodeParams, rng: &mut ChaCha8Rng, len: usize) -> Poly {
    let q = params.fq.order() as u32;
    Poly::from_coeffs((0..len).map(|_| params.fq.elem(rng.gen_range(0..q))).collect())
}

fn random_au(params: &CodeParams, rng: &mut ChaCha8Rng) -> AuElem {
    let len = params.len() * params.lambda;
    (random_poly(params, rng, len), random_poly(params, rng, len))
}

/// `Psi` additive and multiplicative on seeded random pairs, plus the two
/// distinguished images `Psi(beta) = u^2` and `Psi(x^L) = gamma`.
pub fn psi_homomorphism(params: &CodeParams, samples: usize, seed: u64) -> Result<Vec<OracleReport>> {
    let label = params_label(params);
    let amb = &params.ambient;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(AuElem, AuElem)> =
        (0..samples).map(|_| (random_au(params, &mut rng), random_au(params, &mut rng))).collect();
    let psi = |a: &AuElem| params.psi_forward(&a.0, &a.1);
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (pa, pb) = (psi(a)?, psi(b)?);
            let add = psi(&params.au_add(a, b))? == amb.add(&pa, &pb);
            let mul = psi(&params.au_mul(a, b))? == amb.mul(&pa, &pb);
            Ok((add, mul))
        })
        .collect::<Result<_>>()?;
    let add_fail = results.iter().filter(|r| !r.0).count();
    let mul_fail = results.iter().filter(|r| !r.1).count();
    let u2 = amb.monomial::<Primal>(crate::field::FieldElem::ONE, 0, 2);
    let beta_ok = params.psi_forward(&params.beta, &Poly::zero())? == u2;
    let xl = binomial(&params.fq, params.len(), crate::field::FieldElem::ZERO);
    let gamma = amb.r_scale(&amb.one::<Primal>(), amb.gamma());
    let xl_ok = params.psi_forward(&xl, &Poly::zero())? == gamma;
    Ok(vec![
        OracleReport::new(
            "psi additive",
            &label,
            format!("0/{samples} failures"),
            format!("{add_fail}/{samples} failures"),
        ),
        OracleReport::new(
            "psi multiplicative",
            &label,
            format!("0/{samples} failures"),
            format!("{mul_fail}/{samples} failures"),
        ),
        OracleReport::new("psi(beta) = u^2", &label, true, beta_ok),
        OracleReport::new("psi(x^L) = gamma", &label, true, xl_ok),
    ])
}

/// `Psi(Psi^{-1}(a)) = a` for every element of the ambient ring.
pub fn psi_roundtrip_exhaustive(params: &CodeParams) -> Result<OracleReport> {
    let amb = &params.ambient;
    let total = guarded_ambient_size(params)?;
    let fails = (0..total)
        .into_par_iter()
        .map(|key| {
            let a: AmbientElem<Primal> = amb.from_key(key);
            let (xi0, xi1) = params.psi_inverse(&a);
            Ok(params.psi_forward(&xi0, &xi1)? != a)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&f| f)
        .count();
    Ok(OracleReport::new(
        "psi round trip",
        &params_label(params),
        format!("0/{total} failures"),
        format!("{fails}/{total} failures"),
    ))
}

pub fn idempotent_identities(params: &CodeParams) -> OracleReport {
    let got = params.crt.check_idempotents().map(|_| "hold".to_string()).unwrap_or_else(|e| e.to_string());
    OracleReport::new("idempotent identities", &params_label(params), "hold", got)
}

fn guarded_ambient_size(params: &CodeParams) -> Result<u128> {
    (params.fq.order() as u128)
        .checked_pow(params.ambient.width() as u32)
        .filter(|&t| t <= AMBIENT_GUARD)
        .ok_or_else(|| Error::TooLarge(format!("explicit checks need |R|^L <= {AMBIENT_GUARD}")))
}

pub fn brute_force_feasible(params: &CodeParams) -> bool {
    guarded_ambient_size(params).is_ok()
}

/// Every code when there are at most `limit`, else `limit` codes with each
/// local ideal drawn uniformly from a seeded stream.
pub fn sample_codes(params: &CodeParams, limit: usize, seed: u64) -> Vec<CodeDesc> {
    if params.count_codes() <= BigUint::from(limit) {
        return enumerate_codes(params).collect();
    }
    let lists: Vec<Vec<IdealDesc>> = params.quads.iter().map(|q| enumerate_ideals(&q.chain).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..limit).map(|_| CodeDesc::new(lists.iter().map(|l| l[rng.gen_range(0..l.len())].clone()).collect())).collect()
}

/// Named per-code checks that need no explicit element sets.
pub const CODE_CHECKS: [&str; 7] = [
    "build equals CRT assembly",
    "constacyclic closure",
    "size equals span rank",
    "size plus dual size equals ambient size",
    "generators orthogonal to dual generators",
    "dual equals tau of annihilator code",
    "dual equals orthogonal complement",
];

/// Results of [`CODE_CHECKS`] for one code, in order.
pub fn code_checks(params: &CodeParams, desc: &CodeDesc) -> Result<Vec<bool>> {
    let amb = &params.ambient;
    let built = desc.build(params)?;
    let via_crt = desc.build_via_crt(params)?;
    let span = amb.span(&built);
    let closure = built
        .iter()
        .map(|g| desc.contains(params, &amb.x_shift(g)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let size = desc.size_logp(params)?;
    let ann = desc.annihilator(params)?;
    let total = params.ambient_logp();
    let dual = desc.dual_generators(params)?;
    let dual_span = amb.span(&dual);
    let tau_ann: Vec<AmbientElem<Dual>> = ann.build(params)?.iter().map(|g| amb.tau(g)).collect();
    Ok(vec![
        span == amb.span(&via_crt),
        closure,
        subspace_logp(&params.fq, &span) == size,
        size + ann.size_logp(params)? == total,
        check_orthogonal(amb, &built, &dual),
        dual_span == amb.span(&tau_ann),
        dual_span == orthogonal_complement_kernel(amb, &built),
    ])
}

/// Explicit codeword count, and the dual against the scanned complement.
pub fn brute_force_checks(params: &CodeParams, desc: &CodeDesc) -> Result<(bool, bool)> {
    let amb = &params.ambient;
    let cw = bf_codewords(amb, &desc.build(params)?)?;
    let expected = (params.fq.characteristic() as u128).pow(desc.size_logp(params)? as u32);
    let size_ok = cw.len() as u128 == expected;
    let complement = bf_orthogonal_complement(amb, &cw)?;
    let dual: ElementSet = bf_codewords(amb, &desc.dual_generators(params)?)?;
    Ok((size_ok, complement == dual))
}

fn tally(label: &str, check: &str, fails: usize, total: usize) -> OracleReport {
    OracleReport::new(check, label, format!("0/{total} failures"), format!("{fails}/{total} failures"))
}

/// Every applicable suite for one parameter set.
pub fn verify_params(params: &CodeParams, opts: &VerifyOptions) -> Result<Vec<OracleReport>> {
    let label = params_label(params);
    let mut reports = psi_homomorphism(params, opts.samples, opts.seed)?;
    if params.r() >= 2 {
        reports.push(idempotent_identities(params));
    }
    let count = params.count_codes();
    let (n1, n2) = params.count_by_generators();
    reports.push(OracleReport::new("one- plus two-generator counts", &label, &count, n1 + n2));
    let codes = sample_codes(params, opts.max_codes, opts.seed);
    let results: Vec<Vec<bool>> = codes.par_iter().map(|d| code_checks(params, d)).collect::<Result<_>>()?;
    for (i, name) in CODE_CHECKS.iter().enumerate() {
        let fails = results.iter().filter(|r| !r[i]).count();
        reports.push(tally(&label, name, fails, codes.len()));
    }
    if opts.brute_force {
        guarded_ambient_size(params)?;
        reports.push(psi_roundtrip_exhaustive(params)?);
        let bf: Vec<(bool, bool)> = codes.iter().map(|d| brute_force_checks(params, d)).collect::<Result<_>>()?;
        reports.push(tally(&label, "explicit codeword count", bf.iter().filter(|r| !r.0).count(), codes.len()));
        reports.push(tally(&label, "dual equals scanned complement", bf.iter().filter(|r| !r.1).count(), codes.len()));
    }
    Ok(reports)
}

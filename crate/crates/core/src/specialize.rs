//! Normal forms for the single-factor case `r = 1`, where `x^n - delta0` is
//! irreducible, and closed-form duals when additionally `n = 1`.
//!
//! Write `P = p^k` and `pi = x^n - delta0`. Every exponent `a < lambda P` of
//! `pi` splits as `a = l0 + l1 P`, and `Psi(pi^a) = alpha^{l1} pi^{l0} u^{2 l1}`.
//! Generators are rewritten in that form with unit factors absorbed into the
//! residue coefficient. For `n = 1` the dual lives in the ring with
//! `x^P = gamma^{-1}` and is written with
//!
//! ```text
//! pihat = x - delta0^{-1}
//! rho   = -delta0 gamma x^{P-1}          tau(pi) = rho pihat
//! theta = sum_{j>=1} (-1)^j delta^{-(j+1)} alpha^j u^{2j-2}
//! pihat^P = theta u^2
//! hhat  = h(x^{-1})
//! ```
//!
//! Every closed form is checked against the generic dual by span equality.

use rayon::prelude::*;

use crate::ambient::{Ambient, AmbientElem, Dual, Primal, RElem};
use crate::code::{check_orthogonal, enumerate_codes, CodeDesc, CodeParams};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::ideal::{IdealDesc, ResidueKey};
use crate::poly::Poly;

/// `coeff * pi^pi * u^u` in the primal ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTerm {
    pub coeff: Poly,
    pub pi: usize,
    pub u: usize,
}

/// `coeff * alpha^alpha * hhat * theta^theta * rho^rho * pihat^pihat * u^u`
/// in the dual ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTerm {
    pub coeff: FieldElem,
    pub alpha: i32,
    pub hhat: Option<Poly>,
    pub theta: i32,
    pub rho: usize,
    pub pihat: usize,
    pub u: usize,
}

pub type GenExpr = Vec<GenTerm>;
pub type DualExpr = Vec<DualTerm>;

/// Ring constants used by the closed-form duals.
#[derive(Clone, Debug)]
pub struct DualConsts {
    pub delta0_inv: FieldElem,
    pub alpha_inv: FieldElem,
    pub pihat: AmbientElem<Dual>,
    pub rho: AmbientElem<Dual>,
    pub theta: RElem,
    pub theta_inv: RElem,
}

impl DualConsts {
    pub fn new(params: &CodeParams) -> Result<DualConsts> {
        require_single_factor(params)?;
        if params.n != 1 {
            return Err(Error::InvalidParams("closed-form duals need n = 1".into()));
        }
        let fq = &params.fq;
        let amb = &params.ambient;
        let p = params.pk;
        let delta0_inv = fq.inv(params.delta0)?;
        let pihat = amb.sub(&amb.monomial::<Dual>(FieldElem::ONE, 1, 0), &amb.monomial(delta0_inv, 0, 0));
        let c = amb.r_mul(&amb.r_const(fq.neg(params.delta0)), amb.gamma());
        let rho = amb.r_scale(&amb.monomial::<Dual>(FieldElem::ONE, p - 1, 0), &c);
        let delta_inv = fq.inv(params.delta)?;
        let mut theta = vec![FieldElem::ZERO; amb.e()];
        for j in 1..params.lambda {
            let mut c = fq.mul(fq.pow(delta_inv, j as u64 + 1), fq.pow(params.alpha, j as u64));
            if j % 2 == 1 {
                c = fq.neg(c);
            }
            theta[2 * j - 2] = c;
        }
        let theta_inv = amb.r_inv(&theta).ok_or(Error::NotAUnit)?;
        Ok(DualConsts { delta0_inv, alpha_inv: fq.inv(params.alpha)?, pihat, rho, theta, theta_inv })
    }
}

pub fn require_single_factor(params: &CodeParams) -> Result<()> {
    if params.r() != 1 {
        return Err(Error::NotIrreducible(format!("x^{} - delta0 has {} irreducible factors", params.n, params.r())));
    }
    Ok(())
}

/// `(l0, l1)` with `s = l0 + l1 P`.
fn split(s: usize, p: usize) -> (usize, usize) {
    (s % p, s / p)
}

/// The exponent `s` of the `u`-term or principal power, where the family has one.
fn base_exponent(desc: &IdealDesc) -> Option<usize> {
    match desc {
        IdealDesc::I3 { s, .. }
        | IdealDesc::II { s }
        | IdealDesc::IV1 { s }
        | IdealDesc::IV2 { s, .. }
        | IdealDesc::IV3 { s, .. } => Some(*s),
        _ => None,
    }
}

fn local(desc: &CodeDesc) -> &IdealDesc {
    &desc.locals[0]
}

/// Subcase label of the single-factor classification.
pub fn subcase_label(params: &CodeParams, desc: &CodeDesc) -> Result<&'static str> {
    require_single_factor(params)?;
    desc.validate(params)?;
    let p = params.pk;
    Ok(match local(desc) {
        IdealDesc::I1 => "i-1",
        IdealDesc::I2 { .. } => "i-2",
        IdealDesc::I3 { .. } => "i-3",
        IdealDesc::II { .. } => "ii",
        IdealDesc::III1 => "iii-1",
        IdealDesc::III2 { .. } => "iii-2",
        IdealDesc::III3 { t, .. } if *t == p => "iii-3-1",
        IdealDesc::III3 { .. } => "iii-3-2",
        IdealDesc::IV1 { .. } => "iv-1",
        IdealDesc::IV2 { .. } => "iv-2",
        IdealDesc::IV3 { s, t, .. } => {
            let (l0, _) = split(*s, p);
            let c = t.div_ceil(2);
            if *t == p {
                if l0 >= (p - 1) / 2 {
                    "iv-3-1"
                } else {
                    "iv-3-2"
                }
            } else if l0 + t < p {
                "iv-3-3"
            } else if l0 + c < p {
                "iv-3-4"
            } else {
                "iv-3-5"
            }
        }
    })
}

const MAJOR_GROUPS: [&str; 14] = [
    "i-1", "i-2", "i-3", "ii", "iii-1", "iii-2", "iii-3", "iv-1", "iv-2", "iv-3-1", "iv-3-2", "iv-3-3", "iv-3-4",
    "iv-3-5",
];

/// Row group of the listing: the subcase label refined by exponent range.
/// Returns the label and a sort key.
pub fn table_group(params: &CodeParams, desc: &CodeDesc) -> Result<(String, (usize, usize))> {
    let sub = subcase_label(params, desc)?;
    let p = params.pk;
    let nil = params.nil();
    let d = local(desc);
    let (l0, l1) = base_exponent(d).map(|s| split(s, p)).unwrap_or((0, 0));
    let (major, minor) = match d {
        IdealDesc::I3 { .. } => ("i-3", l0 + 1),
        IdealDesc::II { s } => ("ii", if *s == nil { 1 } else { 2 }),
        IdealDesc::III3 { t, .. } => ("iii-3", p - t + 1),
        IdealDesc::IV1 { .. } => (
            "iv-1",
            if l0 == p - 1 {
                2
            } else if l1 == 0 {
                1
            } else if l0 == 0 {
                3
            } else {
                4
            },
        ),
        IdealDesc::IV2 { .. } => (
            "iv-2",
            if l0 == p - 1 {
                1
            } else if l1 == 0 {
                2
            } else {
                3
            },
        ),
        _ => (sub, 0),
    };
    let idx = MAJOR_GROUPS.iter().position(|&g| g == major).expect("known group");
    let label = if minor == 0 { major.to_string() } else { format!("{major}-{minor}") };
    Ok((label, (idx, minor)))
}

/// `sum_i digit_i(x) pi^i` as a polynomial in `x`.
fn digits_to_poly(params: &CodeParams, digits: &[ResidueKey]) -> Poly {
    let ring = params.fq.poly_ring();
    let pi = &params.factors[0];
    let mut acc = Poly::zero();
    let mut pw = Poly::one();
    for r in digits {
        acc = ring.add(&acc, &ring.mul(&r.to_poly(&params.fq), &pw));
        pw = ring.mul(&pw, pi);
    }
    acc
}

/// One summand `coeff * pi^a * u^{flag}` before normalization.
struct Raw {
    coeff: Option<Poly>,
    a: usize,
    u: usize,
}

fn raw(coeff: Option<Poly>, a: usize, u: usize) -> Raw {
    Raw { coeff, a, u }
}

/// Applies `pi^{l0 + l1 P} = alpha^{l1} pi^{l0} u^{2 l1}` and divides by the
/// unit of the coefficient-free summand.
fn normalize(params: &CodeParams, terms: Vec<Raw>) -> GenExpr {
    let fq = &params.fq;
    let ring = fq.poly_ring();
    let p = params.pk;
    let ref_l1 = terms.iter().find(|t| t.coeff.is_none()).map(|t| t.a / p).unwrap_or(0);
    terms
        .into_iter()
        .filter_map(|t| {
            let (l0, l1) = split(t.a, p);
            let coeff = match t.coeff {
                None => Poly::one(),
                Some(c) => ring.scale(&c, fq.pow(params.alpha, (l1 - ref_l1) as u64)),
            };
            (!coeff.is_zero()).then_some(GenTerm { coeff, pi: l0, u: 2 * l1 + t.u })
        })
        .collect()
}

/// Generators in normal form, one expression per generator. The zero code
/// has none.
pub fn normal_form(params: &CodeParams, desc: &CodeDesc) -> Result<Vec<GenExpr>> {
    require_single_factor(params)?;
    desc.validate(params)?;
    let nil = params.nil();
    let res = |b: &ResidueKey| Some(b.to_poly(&params.fq));
    let hp = |h: &[ResidueKey]| Some(digits_to_poly(params, h));
    let gens: Vec<Vec<Raw>> = match local(desc) {
        IdealDesc::I1 => vec![vec![raw(None, nil - 1, 1)]],
        IdealDesc::I2 { b } => vec![vec![raw(res(b), nil - 1, 0), raw(None, nil - 2, 1)]],
        IdealDesc::I3 { s, h } => {
            let c = (nil - s).div_ceil(2);
            vec![vec![raw(hp(h), c + s, 0), raw(None, *s, 1)]]
        }
        IdealDesc::II { s } if *s == nil => vec![],
        IdealDesc::II { s } => vec![vec![raw(None, *s, 0)]],
        IdealDesc::III1 => vec![vec![raw(None, 0, 1)], vec![raw(None, 1, 0)]],
        IdealDesc::III2 { b } => vec![vec![raw(res(b), 1, 0), raw(None, 0, 1)], vec![raw(None, 2, 0)]],
        IdealDesc::III3 { t, h } => {
            let c = t.div_ceil(2);
            vec![vec![raw(hp(h), c, 0), raw(None, 0, 1)], vec![raw(None, *t, 0)]]
        }
        IdealDesc::IV1 { s } => vec![vec![raw(None, s + 1, 0)], vec![raw(None, *s, 1)]],
        IdealDesc::IV2 { s, b } => {
            vec![vec![raw(res(b), s + 1, 0), raw(None, *s, 1)], vec![raw(None, s + 2, 0)]]
        }
        IdealDesc::IV3 { s, t, h } => {
            let c = t.div_ceil(2);
            vec![vec![raw(hp(h), s + c, 0), raw(None, *s, 1)], vec![raw(None, s + t, 0)]]
        }
    };
    Ok(gens.into_iter().map(|g| normalize(params, g)).collect())
}

/// The residue coefficient carried by the normal form, if any.
fn normal_coeff(gens: &[GenExpr]) -> Option<Poly> {
    gens.first().and_then(|g| (g.len() == 2).then(|| g[0].coeff.clone()))
}

fn u_pow(amb: &Ambient, j: usize) -> RElem {
    let mut r = vec![FieldElem::ZERO; amb.e()];
    if j < amb.e() {
        r[j] = FieldElem::ONE;
    }
    r
}

pub fn eval_gen(params: &CodeParams, g: &GenExpr) -> AmbientElem<Primal> {
    let amb = &params.ambient;
    let ring = params.fq.poly_ring();
    g.iter().fold(amb.zero(), |acc, t| {
        let poly = ring.mul(&t.coeff, &ring.pow(&params.factors[0], t.pi as u64));
        let term = amb.r_scale(&amb.from_poly::<Primal>(&poly), &u_pow(amb, t.u));
        amb.add(&acc, &term)
    })
}

fn plain(pihat: usize, u: usize) -> DualTerm {
    DualTerm { coeff: FieldElem::ONE, alpha: 0, hhat: None, theta: 0, rho: 0, pihat, u }
}

/// Rewrites `pihat^{i}` with `i >= P` as `theta^t pihat^{i - tP} u^{2t}`, drops
/// vanishing terms, and strips unit factors from single-term generators.
fn tidy(params: &CodeParams, terms: Vec<DualTerm>) -> DualExpr {
    let p = params.pk;
    let e = 2 * params.lambda;
    let mut out: DualExpr = terms
        .into_iter()
        .filter_map(|mut t| {
            let shift = t.pihat / p;
            t.pihat -= shift * p;
            t.theta += shift as i32;
            t.u += 2 * shift;
            let zero_h = t.hhat.as_ref().is_some_and(Poly::is_zero);
            (t.u < e && !t.coeff.is_zero() && !zero_h).then_some(t)
        })
        .collect();
    if out.len() == 1 && out[0].hhat.is_none() {
        let t = &mut out[0];
        t.coeff = FieldElem::ONE;
        t.alpha = 0;
        t.theta = 0;
        t.rho = 0;
    }
    out
}

/// Closed-form dual generators for `n = 1`, written with `pihat`, `rho`,
/// `theta` and `hhat`.
pub fn closed_dual(params: &CodeParams, desc: &CodeDesc) -> Result<Vec<DualExpr>> {
    let gens = normal_form(params, desc)?;
    if params.n != 1 {
        return Err(Error::InvalidParams("closed-form duals need n = 1".into()));
    }
    let fq = &params.fq;
    let p = params.pk;
    let lam = params.lambda;
    let nil = params.nil();
    let coeff = normal_coeff(&gens).unwrap_or_else(Poly::zero);
    let b = coeff.coeff(0);
    let bterm = |rho, pihat, u| DualTerm { coeff: fq.neg(b), alpha: 0, hhat: None, theta: 0, rho, pihat, u };
    // `alpha` and `theta` exponents precede the other factors.
    let hterm = |(alpha, theta): (i32, i32), rho, pihat, u| DualTerm {
        coeff: fq.neg(FieldElem::ONE),
        alpha,
        hhat: Some(coeff.clone()),
        theta,
        rho,
        pihat,
        u,
    };
    let d = local(desc);
    let (l0, l1) = base_exponent(d).map(|s| split(s, p)).unwrap_or((0, 0));
    // u-exponent offset lambda - l1 - 1 of the dual families.
    let big_l = lam.saturating_sub(l1 + 1);
    let raw: Vec<Vec<DualTerm>> = match d {
        IdealDesc::I1 => vec![vec![plain(0, 1)], vec![plain(1, 0)]],
        IdealDesc::I2 { .. } => vec![vec![bterm(1, 1, 0), plain(0, 1)], vec![plain(2, 0)]],
        IdealDesc::I3 { s, .. } => {
            let l0 = s - (lam - 1) * p;
            let c = (p - l0).div_ceil(2);
            vec![vec![hterm((0, 0), c, c, 0), plain(0, 1)], vec![plain(p - l0, 0)]]
        }
        IdealDesc::II { s } if *s == nil => vec![vec![plain(0, 0)]],
        IdealDesc::II { .. } => vec![vec![plain(p - l0, 2 * big_l)]],
        IdealDesc::III1 => vec![vec![plain(p - 1, 2 * lam - 1)]],
        IdealDesc::III2 { .. } => vec![vec![bterm(1, p - 1, 2 * lam - 2), plain(p - 2, 2 * lam - 1)]],
        IdealDesc::III3 { t, .. } => {
            let c = t.div_ceil(2);
            vec![vec![hterm((0, 0), c, p - t + c, 2 * lam - 2), plain(p - t, 2 * lam - 1)]]
        }
        IdealDesc::IV1 { .. } => vec![vec![plain(p - l0, 2 * big_l)], vec![plain(p - l0 - 1, 2 * big_l + 1)]],
        IdealDesc::IV2 { .. } if l0 == p - 1 => {
            let lead = DualTerm {
                coeff: FieldElem::ONE,
                alpha: 0,
                hhat: None,
                theta: 0,
                rho: p - 1,
                pihat: p - 1,
                u: 2 * big_l - 1,
            };
            vec![vec![bterm(0, 0, 2 * big_l), lead], vec![plain(1, 2 * big_l)]]
        }
        IdealDesc::IV2 { .. } => vec![
            vec![bterm(1, p - l0 - 1, 2 * big_l), plain(p - l0 - 2, 2 * big_l + 1)],
            vec![plain(p - l0, 2 * big_l)],
        ],
        IdealDesc::IV3 { t, .. } => {
            let (t, c) = (*t, t.div_ceil(2));
            let tail = vec![plain(p - l0, 2 * big_l)];
            match subcase_label(params, desc)? {
                "iv-3-1" => {
                    vec![tail, vec![hterm((-1, 0), c, p + c - l0, 2 * big_l - 2), plain(p - l0, 2 * big_l - 1)]]
                }
                "iv-3-2" => vec![vec![hterm((0, 1), c, c - l0, 2 * big_l), plain(p - l0, 2 * big_l - 1)], tail],
                "iv-3-3" => {
                    vec![vec![hterm((0, 0), c, p - l0 - t + c, 2 * big_l), plain(p - l0 - t, 2 * big_l + 1)], tail]
                }
                "iv-3-4" => {
                    vec![vec![hterm((0, 1), c, p + c - l0 - t, 2 * big_l), plain(2 * p - l0 - t, 2 * big_l - 1)], tail]
                }
                _ => vec![
                    vec![hterm((-1, 0), c, 2 * p - l0 - t + c, 2 * big_l - 2), plain(2 * p - l0 - t, 2 * big_l - 1)],
                    tail,
                ],
            }
        }
    };
    Ok(raw.into_iter().map(|g| tidy(params, g)).collect())
}

pub fn eval_dual(params: &CodeParams, consts: &DualConsts, g: &DualExpr) -> AmbientElem<Dual> {
    let amb = &params.ambient;
    g.iter().fold(amb.zero(), |acc, t| {
        let a = if t.alpha < 0 { consts.alpha_inv } else { params.alpha };
        let c = params.fq.mul(t.coeff, params.fq.pow(a, t.alpha.unsigned_abs() as u64));
        let mut term = amb.monomial::<Dual>(c, 0, 0);
        let th = if t.theta < 0 { &consts.theta_inv } else { &consts.theta };
        for _ in 0..t.theta.unsigned_abs() {
            term = amb.r_scale(&term, th);
        }
        if let Some(h) = &t.hhat {
            term = amb.mul(&term, &amb.tau(&amb.from_poly::<Primal>(h)));
        }
        term = amb.mul(&term, &amb.pow(&consts.rho, t.rho));
        term = amb.mul(&term, &amb.pow(&consts.pihat, t.pihat));
        term = amb.r_scale(&term, &u_pow(amb, t.u));
        amb.add(&acc, &term)
    })
}

pub fn fmt_elem(fq: &FieldCtx, c: FieldElem) -> String {
    if fq.degree() == 1 {
        return c.index().to_string();
    }
    let parts: Vec<String> = fq
        .to_coeffs(c)
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| monomial_text(&v.to_string(), "y", i))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("+"))
    }
}

fn monomial_text(coeff: &str, var: &str, i: usize) -> String {
    match (coeff, i) {
        (c, 0) => c.to_string(),
        ("1", 1) => var.to_string(),
        ("1", i) => format!("{var}^{i}"),
        (c, 1) => format!("{c}{var}"),
        (c, i) => format!("{c}{var}^{i}"),
    }
}

pub fn fmt_poly(fq: &FieldCtx, a: &Poly) -> String {
    let parts: Vec<String> = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| monomial_text(&fmt_elem(fq, c), "x", i))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Elements of `R` as `c0+c1u+...`.
pub fn fmt_r(fq: &FieldCtx, a: &[FieldElem]) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| monomial_text(&fmt_elem(fq, c), "u", i))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn power(name: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    }
}

fn join_factors(mut factors: Vec<String>, sign: &str) -> String {
    if factors.is_empty() {
        factors.push("1".into());
    }
    format!("{sign}{}", factors.join("*"))
}

fn fmt_gen_term(fq: &FieldCtx, t: &GenTerm) -> String {
    let mut f = Vec::new();
    if !t.coeff.is_one() {
        if t.coeff.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            f.push(fmt_poly(fq, &t.coeff));
        } else {
            f.push(format!("({})", fmt_poly(fq, &t.coeff)));
        }
    }
    f.extend(power("pi", t.pi));
    f.extend(power("u", t.u));
    join_factors(f, "")
}

fn fmt_dual_term(fq: &FieldCtx, t: &DualTerm) -> String {
    let mut f = Vec::new();
    let minus_one = fq.neg(FieldElem::ONE);
    let sign = if t.coeff == minus_one && fq.characteristic() != 2 { "-" } else { "" };
    if t.coeff != FieldElem::ONE && sign.is_empty() {
        f.push(fmt_elem(fq, t.coeff));
    }
    match t.alpha {
        0 => {}
        1 => f.push("alpha".into()),
        k => f.push(format!("alpha^{k}")),
    }
    if t.hhat.is_some() {
        f.push("hhat".into());
    }
    match t.theta {
        0 => {}
        1 => f.push("theta".into()),
        -1 => f.push("theta^-1".into()),
        k => f.push(format!("theta^{k}")),
    }
    f.extend(power("rho", t.rho));
    f.extend(power("pihat", t.pihat));
    f.extend(power("u", t.u));
    join_factors(f, sign)
}

fn fmt_sum(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.join("+").replace("+-", "-")
}

/// `<g1, g2>` in ASCII.
pub fn fmt_gens(fq: &FieldCtx, gens: &[GenExpr]) -> String {
    if gens.is_empty() {
        return "<0>".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| fmt_sum(g.iter().map(|t| fmt_gen_term(fq, t)).collect())).collect();
    format!("<{}>", parts.join(", "))
}

pub fn fmt_dual(fq: &FieldCtx, gens: &[DualExpr]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| fmt_sum(g.iter().map(|t| fmt_dual_term(fq, t)).collect())).collect();
    format!("<{}>", parts.join(", "))
}

/// One code of the single-factor listing.
#[derive(Clone, Debug)]
pub struct SpecialRow {
    pub desc: CodeDesc,
    pub subcase: &'static str,
    pub group: String,
    pub group_key: (usize, usize),
    pub params: String,
    pub generators: Vec<GenExpr>,
    pub size_logp: usize,
    pub dual: Option<Vec<DualExpr>>,
    /// Normal form spans the built code, the emitted dual spans the generic
    /// dual, and the pair passes the orthogonality check.
    pub verified: bool,
}

fn params_text(params: &CodeParams, desc: &CodeDesc, gens: &[GenExpr]) -> String {
    let p = params.pk;
    let fq = &params.fq;
    let d = local(desc);
    let mut kv = Vec::new();
    if let Some(s) = base_exponent(d) {
        let (l0, l1) = split(s, p);
        if !(matches!(d, IdealDesc::II { s } if *s == params.nil())) {
            kv.push(format!("l0={l0}"));
            kv.push(format!("l1={l1}"));
        }
    }
    if let Some(t) = d.t(&params.quads[0].chain) {
        kv.push(format!("t={t}"));
    }
    match d {
        IdealDesc::I2 { .. } | IdealDesc::III2 { .. } | IdealDesc::IV2 { .. } => {
            let b = normal_coeff(gens).unwrap_or_else(Poly::zero);
            kv.push(format!("b={}", fmt_poly(fq, &b)));
        }
        IdealDesc::I3 { .. } | IdealDesc::III3 { .. } | IdealDesc::IV3 { .. } => {
            let h = normal_coeff(gens).unwrap_or_else(Poly::zero);
            kv.push(format!("h={}", fmt_poly(fq, &h)));
        }
        _ => {}
    }
    kv.join(";")
}

pub fn special_row(params: &CodeParams, consts: Option<&DualConsts>, desc: &CodeDesc) -> Result<SpecialRow> {
    let subcase = subcase_label(params, desc)?;
    let (group, group_key) = table_group(params, desc)?;
    let generators = normal_form(params, desc)?;
    let amb = &params.ambient;
    let built = desc.build(params)?;
    let normal: Vec<_> = generators.iter().map(|g| eval_gen(params, g)).collect();
    let mut verified = amb.span(&normal) == amb.span(&built);
    let generic = desc.dual_generators(params)?;
    let dual = match consts {
        Some(consts) => {
            let expr = closed_dual(params, desc)?;
            let closed: Vec<_> = expr.iter().map(|g| eval_dual(params, consts, g)).collect();
            verified &= amb.span(&closed) == amb.span(&generic);
            verified &= check_orthogonal(amb, &built, &closed);
            Some(expr)
        }
        None => {
            verified &= check_orthogonal(amb, &built, &generic);
            None
        }
    };
    Ok(SpecialRow {
        desc: desc.clone(),
        subcase,
        group,
        group_key,
        params: params_text(params, desc, &generators),
        generators,
        size_logp: desc.size_logp(params)?,
        dual,
        verified,
    })
}

/// Every code in normal form, grouped by row group and otherwise in
/// enumeration order. Closed-form duals are attached when `n = 1`.
pub fn special_rows(params: &CodeParams) -> Result<Vec<SpecialRow>> {
    require_single_factor(params)?;
    let consts = if params.n == 1 { Some(DualConsts::new(params)?) } else { None };
    let descs: Vec<CodeDesc> = enumerate_codes(params).collect();
    let mut rows = descs.par_iter().map(|d| special_row(params, consts.as_ref(), d)).collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.group_key);
    Ok(rows)
}

/// The worked listing: `p = 5, m = n = k = 1, lambda = 2, delta = 2, alpha = 3`.
pub fn listing_params() -> Result<CodeParams> {
    CodeParams::from_ints(5, 1, 1, 1, 2, &[2], &[3], 0)
}

pub const TABLE_HEADER: [&str; 6] = ["case", "params", "generators", "size_log_p", "dual_generators", "verified"];

/// Comment line written above the worked listing.
pub const LISTING_NOTE: &str =
    "# i-1 dual is <u, pihat>; the commonly printed listing shows <u, pi>, which is not orthogonal to the code";

pub fn table_record(params: &CodeParams, row: &SpecialRow) -> [String; 6] {
    let fq = &params.fq;
    [
        row.group.clone(),
        row.params.clone(),
        fmt_gens(fq, &row.generators),
        row.size_logp.to_string(),
        row.dual.as_ref().map(|d| fmt_dual(fq, d)).unwrap_or_else(|| "-".into()),
        row.verified.to_string(),
    ]
}

/// CSV with header; `note` lines are written first, verbatim.
pub fn write_table_csv<W: std::io::Write>(
    mut out: W,
    params: &CodeParams,
    rows: &[SpecialRow],
    note: Option<&str>,
) -> Result<()> {
    let io = |e: std::io::Error| Error::Invariant(format!("write failed: {e}"));
    if let Some(n) = note {
        writeln!(out, "{n}").map_err(io)?;
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Invariant(format!("write failed: {e}"));
    w.write_record(TABLE_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record(table_record(params, r)).map_err(csv_err)?;
    }
    w.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> CodeParams {
        listing_params().unwrap()
    }

    #[test]
    fn constants_at_p5() {
        let params = p5();
        let c = DualConsts::new(&params).unwrap();
        let fq = &params.fq;
        assert_eq!(c.delta0_inv, fq.from_int(3));
        assert_eq!(c.theta, vec![fq.from_int(3), FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO]);
        assert_eq!(fq.neg(c.theta_inv[0]), fq.from_int(3));
        let amb = &params.ambient;
        // rho = (1 + 4u^2) x^4 and pihat^5 = theta u^2.
        let rho = amb.matrix(&c.rho);
        assert_eq!(fmt_r(fq, &rho[4]), "1+4u^2");
        let lhs = amb.pow(&c.pihat, 5);
        let rhs = amb.r_scale(&amb.one::<Dual>(), &amb.r_mul(&c.theta, &u_pow(amb, 2)));
        assert_eq!(lhs, rhs);
        // (1 + u^2) rho^5 = 1.
        let r5 = amb.pow(&c.rho, 5);
        let mut one_u2 = amb.r_const(FieldElem::ONE);
        one_u2[2] = FieldElem::ONE;
        assert_eq!(amb.r_scale(&r5, &one_u2), amb.one());
    }

    #[test]
    fn group_sizes_at_p5() {
        let params = p5();
        let rows = special_rows(&params).unwrap();
        assert_eq!(rows.len(), 431);
        let mut sizes: Vec<(String, usize)> = Vec::new();
        for r in &rows {
            match sizes.last_mut() {
                Some((g, n)) if *g == r.group => *n += 1,
                _ => sizes.push((r.group.clone(), 1)),
            }
        }
        let counts: Vec<usize> = sizes.iter().map(|s| s.1).collect();
        assert_eq!(counts, [1, 5, 25, 25, 5, 1, 10, 1, 5, 25, 25, 5, 3, 1, 1, 3, 5, 15, 15, 75, 25, 40, 55, 60]);
        let bad: Vec<_> = rows.iter().filter(|r| !r.verified).map(|r| (&r.group, &r.params)).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn sample_rows_render() {
        let params = p5();
        let fq = &params.fq;
        let rows = special_rows(&params).unwrap();
        let first = &rows[0];
        assert_eq!(first.group, "i-1");
        assert_eq!(fmt_gens(fq, &first.generators), "<pi^4*u^3>");
        assert_eq!(first.size_logp, 1);
        assert_eq!(fmt_dual(fq, first.dual.as_ref().unwrap()), "<u, pihat>");
        let zero = rows.iter().find(|r| r.group == "ii-1").unwrap();
        assert_eq!(fmt_gens(fq, &zero.generators), "<0>");
        assert_eq!(fmt_dual(fq, zero.dual.as_ref().unwrap()), "<1>");
    }

    #[test]
    fn rejects_several_factors() {
        let params = CodeParams::from_ints(3, 1, 2, 1, 2, &[1], &[1], 0).unwrap();
        assert!(matches!(special_rows(&params), Err(Error::NotIrreducible(_))));
    }
}

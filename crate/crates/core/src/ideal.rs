//! The ideals of `K + uK`: canonical descriptors, generators, sizes,
//! annihilators, membership and a deterministic enumeration.
//!
//! Write `N = lambda p^k`, `P = p^k` and `c = ceil(t/2)`. The ten families are
//!
//! | tag  | generators                              | parameters                  |
//! |------|-----------------------------------------|-----------------------------|
//! | I1   | `u pi^{N-1}`                             |                             |
//! | I2   | `pi^{N-1} b + u pi^{N-2}`                | `b` a residue               |
//! | I3   | `pi^{c+s} h + u pi^s`, `t = N - s`       | `(lambda-1)P <= s <= N-3`   |
//! | II   | `pi^s`                                   | `0 <= s <= N`               |
//! | III1 | `u, pi`                                  |                             |
//! | III2 | `pi b + u, pi^2`                         | `b` a residue               |
//! | III3 | `pi^c h + u, pi^t`                       | `3 <= t <= P`               |
//! | IV1  | `pi^{s+1}, u pi^s`                       | `1 <= s <= N-2`             |
//! | IV2  | `pi^{s+1} b + u pi^s, pi^{s+2}`          | `1 <= s <= N-3`             |
//! | IV3  | `pi^{s+c} h + u pi^s, pi^{s+t}`          | `3 <= t <= P, 1 <= s <= N-1-t` |
//!
//! where `b` ranges over residues of degree below `deg f` and `h` over
//! vectors of `floor(t/2)` such residues, read as the low `pi`-adic digits of
//! an element of `K`.

use serde::{Deserialize, Serialize};

use crate::chain::{ChainCtx, ChainElem};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::Poly;
use crate::quad::{QuadCtx, QuadElem};
use crate::staircase::Staircase;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealDesc {
    I1,
    I2 { b: ResidueKey },
    I3 { s: usize, h: Vec<ResidueKey> },
    II { s: usize },
    III1,
    III2 { b: ResidueKey },
    III3 { t: usize, h: Vec<ResidueKey> },
    IV1 { s: usize },
    IV2 { s: usize, b: ResidueKey },
    IV3 { s: usize, t: usize, h: Vec<ResidueKey> },
}

/// A residue of degree below `deg f`, stored as its `deg f` coefficients.
/// Ordered lexicographically from the constant coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueKey(pub Vec<u32>);

impl ResidueKey {
    pub fn zero(d: usize) -> ResidueKey {
        ResidueKey(vec![0; d])
    }

    pub fn from_poly(p: &Poly, d: usize) -> ResidueKey {
        ResidueKey(p.to_fixed(d).iter().map(|c| c.index()).collect())
    }

    pub fn to_poly(&self, fq: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| fq.elem(c)).collect())
    }

    pub fn neg(&self, fq: &FieldCtx) -> ResidueKey {
        ResidueKey(self.0.iter().map(|&c| fq.neg(fq.elem(c)).index()).collect())
    }
}

/// The two generators of an ideal; `g2` is zero for principal ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPair {
    pub g1: QuadElem,
    pub g2: QuadElem,
}

pub const CASE_TAGS: [&str; 10] = ["I1", "I2", "I3", "II", "III1", "III2", "III3", "IV1", "IV2", "IV3"];

impl IdealDesc {
    pub fn tag(&self) -> &'static str {
        CASE_TAGS[self.tag_index()]
    }

    pub fn tag_index(&self) -> usize {
        match self {
            IdealDesc::I1 => 0,
            IdealDesc::I2 { .. } => 1,
            IdealDesc::I3 { .. } => 2,
            IdealDesc::II { .. } => 3,
            IdealDesc::III1 => 4,
            IdealDesc::III2 { .. } => 5,
            IdealDesc::III3 { .. } => 6,
            IdealDesc::IV1 { .. } => 7,
            IdealDesc::IV2 { .. } => 8,
            IdealDesc::IV3 { .. } => 9,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.tag_index() <= 3
    }

    /// The gap exponent `t`, where the family has one. For I3 this is `N - s`.
    pub fn t(&self, k: &ChainCtx) -> Option<usize> {
        match self {
            IdealDesc::I3 { s, .. } => Some(k.nil() - s),
            IdealDesc::III3 { t, .. } | IdealDesc::IV3 { t, .. } => Some(*t),
            _ => None,
        }
    }

    pub fn validate(&self, k: &ChainCtx) -> Result<()> {
        let nil = k.nil();
        let pk = k.pk();
        let d = k.d();
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        let check_res = |r: &ResidueKey| -> Result<()> {
            if r.0.len() != d || r.0.iter().any(|&c| c as u64 >= k.fq.order()) {
                return Err(Error::InvalidDescriptor(format!("residue {:?} is not a degree-<{d} polynomial", r.0)));
            }
            Ok(())
        };
        let check_h = |h: &[ResidueKey], t: usize| -> Result<()> {
            if h.len() != t / 2 {
                return Err(Error::InvalidDescriptor(format!(
                    "h must have floor({t}/2) = {} digits, got {}",
                    t / 2,
                    h.len()
                )));
            }
            h.iter().try_for_each(check_res)
        };
        match self {
            IdealDesc::I1 | IdealDesc::III1 => Ok(()),
            IdealDesc::I2 { b } | IdealDesc::III2 { b } => check_res(b),
            IdealDesc::I3 { s, h } => {
                if *s < (k.lambda() - 1) * pk || *s + 3 > nil {
                    return bad(format!("I3 needs {} <= s <= {}, got {s}", (k.lambda() - 1) * pk, nil as i64 - 3));
                }
                check_h(h, nil - s)
            }
            IdealDesc::II { s } => {
                if *s > nil {
                    return bad(format!("II needs s <= {nil}, got {s}"));
                }
                Ok(())
            }
            IdealDesc::III3 { t, h } => {
                if *t < 3 || *t > pk {
                    return bad(format!("III3 needs 3 <= t <= {pk}, got {t}"));
                }
                check_h(h, *t)
            }
            IdealDesc::IV1 { s } => {
                if *s < 1 || *s + 2 > nil {
                    return bad(format!("IV1 needs 1 <= s <= {}, got {s}", nil - 2));
                }
                Ok(())
            }
            IdealDesc::IV2 { s, b } => {
                if *s < 1 || *s + 3 > nil {
                    return bad(format!("IV2 needs 1 <= s <= {}, got {s}", nil as i64 - 3));
                }
                check_res(b)
            }
            IdealDesc::IV3 { s, t, h } => {
                if *t < 3 || *t > pk {
                    return bad(format!("IV3 needs 3 <= t <= {pk}, got {t}"));
                }
                if *s < 1 || *s + 1 + *t > nil {
                    return bad(format!("IV3 needs 1 <= s <= {}, got {s}", nil as i64 - 1 - *t as i64));
                }
                check_h(h, *t)
            }
        }
    }

    /// `log_p |C|`.
    pub fn size_logp(&self, k: &ChainCtx) -> Result<usize> {
        self.validate(k)?;
        let nil = k.nil();
        let factor = match self {
            IdealDesc::I1 => 1,
            IdealDesc::I2 { .. } => 2,
            IdealDesc::I3 { s, .. } => nil - s,
            IdealDesc::II { s } => 2 * (nil - s),
            IdealDesc::III1 => 2 * nil - 1,
            IdealDesc::III2 { .. } => 2 * (nil - 1),
            IdealDesc::III3 { t, .. } => 2 * nil - t,
            IdealDesc::IV1 { s } => 2 * nil - 2 * s - 1,
            IdealDesc::IV2 { s, .. } => 2 * (nil - s - 1),
            IdealDesc::IV3 { s, t, .. } => 2 * nil - 2 * s - t,
        };
        Ok(factor * k.fq.degree() * k.d())
    }

    /// Descriptor of the annihilator ideal.
    pub fn annihilator(&self, k: &ChainCtx) -> Result<IdealDesc> {
        self.validate(k)?;
        let nil = k.nil();
        let fq = &k.fq;
        let neg_h = |h: &[ResidueKey]| h.iter().map(|r| r.neg(fq)).collect::<Vec<_>>();
        Ok(match self {
            IdealDesc::I1 => IdealDesc::III1,
            IdealDesc::I2 { b } => IdealDesc::III2 { b: b.neg(fq) },
            IdealDesc::I3 { s, h } => IdealDesc::III3 { t: nil - s, h: neg_h(h) },
            IdealDesc::II { s } => IdealDesc::II { s: nil - s },
            IdealDesc::III1 => IdealDesc::I1,
            IdealDesc::III2 { b } => IdealDesc::I2 { b: b.neg(fq) },
            IdealDesc::III3 { t, h } => IdealDesc::I3 { s: nil - t, h: neg_h(h) },
            IdealDesc::IV1 { s } => IdealDesc::IV1 { s: nil - s - 1 },
            IdealDesc::IV2 { s, b } => IdealDesc::IV2 { s: nil - s - 2, b: b.neg(fq) },
            IdealDesc::IV3 { s, t, h } => IdealDesc::IV3 { s: nil - s - t, t: *t, h: neg_h(h) },
        })
    }

    /// The residue `h` as an element of `K` with digits beyond `floor(t/2)` zero.
    fn h_elem(k: &ChainCtx, h: &[ResidueKey]) -> ChainElem {
        k.from_digits(h.iter().map(|r| r.to_poly(&k.fq)).collect()).expect("validated digits")
    }

    pub fn generators(&self, q: &QuadCtx) -> Result<GenPair> {
        let k = &q.chain;
        self.validate(k)?;
        let nil = k.nil();
        let fq = &k.fq;
        let el = |a0: ChainElem, a1: ChainElem| q.elem(a0, a1);
        let res = |b: &ResidueKey, s: usize| k.pi_pow_times(s, b.to_poly(fq));
        let zero = q.zero();
        let pair = |g1: QuadElem, g2: QuadElem| GenPair { g1, g2 };
        Ok(match self {
            IdealDesc::I1 => pair(el(k.zero(), k.pi_pow(nil - 1)), zero),
            IdealDesc::I2 { b } => pair(el(res(b, nil - 1), k.pi_pow(nil - 2)), zero),
            IdealDesc::I3 { s, h } => {
                let c = (nil - s).div_ceil(2);
                pair(el(k.shift_up(&Self::h_elem(k, h), c + s), k.pi_pow(*s)), zero)
            }
            IdealDesc::II { s } => pair(el(k.pi_pow(*s), k.zero()), zero),
            IdealDesc::III1 => pair(q.u(), el(k.pi_pow(1), k.zero())),
            IdealDesc::III2 { b } => pair(el(res(b, 1), k.one()), el(k.pi_pow(2), k.zero())),
            IdealDesc::III3 { t, h } => {
                let c = t.div_ceil(2);
                pair(el(k.shift_up(&Self::h_elem(k, h), c), k.one()), el(k.pi_pow(*t), k.zero()))
            }
            IdealDesc::IV1 { s } => pair(el(k.pi_pow(s + 1), k.zero()), el(k.zero(), k.pi_pow(*s))),
            IdealDesc::IV2 { s, b } => pair(el(res(b, s + 1), k.pi_pow(*s)), el(k.pi_pow(s + 2), k.zero())),
            IdealDesc::IV3 { s, t, h } => {
                let c = t.div_ceil(2);
                pair(el(k.shift_up(&Self::h_elem(k, h), s + c), k.pi_pow(*s)), el(k.pi_pow(s + t), k.zero()))
            }
        })
    }

    /// Echelon form of the ideal viewed as a `K`-submodule of `K^2`.
    pub fn staircase(&self, q: &QuadCtx) -> Result<Staircase> {
        let g = self.generators(q)?;
        let rows: Vec<_> = [g.g1.clone(), q.times_u(&g.g1), g.g2.clone(), q.times_u(&g.g2)]
            .into_iter()
            .map(|e| (e.a0, e.a1))
            .collect();
        Ok(Staircase::from_rows(&q.chain, &rows))
    }

    pub fn contains(&self, q: &QuadCtx, x: &QuadElem) -> Result<bool> {
        Ok(self.staircase(q)?.contains(&q.chain, &x.a0, &x.a1))
    }

    pub fn contains_with(stair: &Staircase, q: &QuadCtx, x: &QuadElem) -> bool {
        stair.contains(&q.chain, &x.a0, &x.a1)
    }
}

/// Descriptor equality. Descriptors are canonical, so syntactic equality
/// decides ideal equality.
pub fn ideal_equal(a: &IdealDesc, b: &IdealDesc) -> bool {
    a == b
}

/// Ideal equality decided from generators through the echelon form.
pub fn ideal_equal_slow(q: &QuadCtx, a: &IdealDesc, b: &IdealDesc) -> Result<bool> {
    Ok(a.staircase(q)? == b.staircase(q)?)
}

/// Every digit vector of length `len` over the residues, lexicographic with the
/// first coefficient of the first digit most significant.
pub fn residue_vectors(k: &ChainCtx, len: usize) -> impl Iterator<Item = Vec<ResidueKey>> + '_ {
    let q = k.fq.order() as u32;
    let d = k.d();
    let total = (q as u128).pow((d * len) as u32);
    (0..total).map(move |mut idx| {
        let mut flat = vec![0u32; d * len];
        for slot in flat.iter_mut().rev() {
            *slot = (idx % q as u128) as u32;
            idx /= q as u128;
        }
        flat.chunks(d.max(1)).take(len).map(|c| ResidueKey(c.to_vec())).collect()
    })
}

/// All ideals in the documented order: family tag, then `s`, then `t`, then
/// residues lexicographically.
pub fn enumerate_ideals(k: &ChainCtx) -> impl Iterator<Item = IdealDesc> + '_ {
    let nil = k.nil();
    let pk = k.pk();
    let lam = k.lambda();
    let residues = move || residue_vectors(k, 1).map(|mut v| v.pop().expect("one digit"));
    let i1 = std::iter::once(IdealDesc::I1);
    let i2 = residues().map(|b| IdealDesc::I2 { b });
    let i3 = ((lam - 1) * pk..=nil.saturating_sub(3))
        .filter(move |&s| s + 3 <= nil)
        .flat_map(move |s| residue_vectors(k, (nil - s) / 2).map(move |h| IdealDesc::I3 { s, h }));
    let ii = (0..=nil).map(|s| IdealDesc::II { s });
    let iii1 = std::iter::once(IdealDesc::III1);
    let iii2 = residues().map(|b| IdealDesc::III2 { b });
    let iii3 = (3..=pk).flat_map(move |t| residue_vectors(k, t / 2).map(move |h| IdealDesc::III3 { t, h }));
    let iv1 = (1..=nil.saturating_sub(2)).map(|s| IdealDesc::IV1 { s });
    let iv2 = (1..=nil.saturating_sub(3)).flat_map(move |s| residues().map(move |b| IdealDesc::IV2 { s, b }));
    let iv3 = (1..nil).flat_map(move |s| {
        (3..=pk)
            .filter(move |&t| s + 1 + t <= nil)
            .flat_map(move |t| residue_vectors(k, t / 2).map(move |h| IdealDesc::IV3 { s, t, h }))
    });
    i1.chain(i2).chain(i3).chain(ii).chain(iii1).chain(iii2).chain(iii3).chain(iv1).chain(iv2).chain(iv3)
}

/// `sum_{l=0}^{(P-1)/2} (1 + 2N - 4l) p^{l m d}`.
pub fn count_ideals(p: u64, m: usize, k: u32, lambda: usize, d: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let pk = p.pow(k);
    let nil = lambda as u64 * pk;
    let base = BigUint::from(p).pow((m * d) as u32);
    let mut total = BigUint::from(0u32);
    let mut power = BigUint::from(1u32);
    for l in 0..=(pk - 1) / 2 {
        total += &power * BigUint::from(1 + 2 * nil - 4 * l);
        power *= &base;
    }
    total
}

/// Local counts of ideals with one generator (zero ideal included) and with
/// two: `(2 + N + p^{md} + sum_t p^{md floor(t/2)},
/// N - 1 + (N - 2) p^{md} + sum_t (N - t) p^{md floor(t/2)})`, `3 <= t <= P`.
pub fn count_by_generators_local(
    p: u64,
    m: usize,
    k: u32,
    lambda: usize,
    d: usize,
) -> (num_bigint::BigUint, num_bigint::BigUint) {
    use num_bigint::BigUint;
    let pk = p.pow(k);
    let nil = lambda as u64 * pk;
    let base = BigUint::from(p).pow((m * d) as u32);
    let mut one = BigUint::from(2 + nil) + &base;
    let mut two = BigUint::from(nil - 1) + BigUint::from(nil - 2) * &base;
    for t in 3..=pk {
        let w = base.pow((t / 2) as u32);
        one += &w;
        two += BigUint::from(nil - t) * w;
    }
    (one, two)
}

/// Serialized descriptor: `{case, s?, t?, b?, h_digits?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_digits: Option<Vec<Vec<Vec<i64>>>>,
}

impl IdealJson {
    pub fn from_desc(k: &ChainCtx, desc: &IdealDesc) -> IdealJson {
        let fq = &k.fq;
        let res = |r: &ResidueKey| -> Vec<Vec<i64>> {
            r.to_poly(fq).coeffs().iter().map(|&c| fq.to_coeffs(c).into_iter().map(i64::from).collect()).collect()
        };
        let digits = |h: &[ResidueKey]| Some(h.iter().map(res).collect());
        let mut out = IdealJson { case: desc.tag().to_string(), s: None, t: None, b: None, h_digits: None };
        match desc {
            IdealDesc::I1 | IdealDesc::III1 => {}
            IdealDesc::I2 { b } | IdealDesc::III2 { b } => out.b = Some(res(b)),
            IdealDesc::I3 { s, h } => {
                out.s = Some(*s);
                out.t = Some(k.nil() - s);
                out.h_digits = digits(h);
            }
            IdealDesc::II { s } | IdealDesc::IV1 { s } => out.s = Some(*s),
            IdealDesc::III3 { t, h } => {
                out.t = Some(*t);
                out.h_digits = digits(h);
            }
            IdealDesc::IV2 { s, b } => {
                out.s = Some(*s);
                out.b = Some(res(b));
            }
            IdealDesc::IV3 { s, t, h } => {
                out.s = Some(*s);
                out.t = Some(*t);
                out.h_digits = digits(h);
            }
        }
        out
    }

    pub fn to_desc(&self, k: &ChainCtx) -> Result<IdealDesc> {
        let fq = &k.fq;
        let d = k.d();
        let missing = |what: &str| Error::InvalidDescriptor(format!("{} requires field `{what}`", self.case));
        let res = |raw: &[Vec<i64>]| -> Result<ResidueKey> {
            let p = Poly::deserialize_with(fq, raw)?;
            if p.degree().is_some_and(|e| e >= d) {
                return Err(Error::InvalidDescriptor(format!("residue of degree >= {d}")));
            }
            Ok(ResidueKey::from_poly(&p, d))
        };
        let b = || res(self.b.as_deref().ok_or_else(|| missing("b"))?);
        let h = || -> Result<Vec<ResidueKey>> {
            self.h_digits.as_ref().ok_or_else(|| missing("h_digits"))?.iter().map(|r| res(r)).collect()
        };
        let s = || self.s.ok_or_else(|| missing("s"));
        let t = || self.t.ok_or_else(|| missing("t"));
        let desc = match self.case.as_str() {
            "I1" => IdealDesc::I1,
            "I2" => IdealDesc::I2 { b: b()? },
            "I3" => {
                let s = s()?;
                if let Some(t) = self.t {
                    if s + t != k.nil() {
                        return Err(Error::InvalidDescriptor(format!("I3 needs s + t = {}", k.nil())));
                    }
                }
                IdealDesc::I3 { s, h: h()? }
            }
            "II" => IdealDesc::II { s: s()? },
            "III1" => IdealDesc::III1,
            "III2" => IdealDesc::III2 { b: b()? },
            "III3" => IdealDesc::III3 { t: t()?, h: h()? },
            "IV1" => IdealDesc::IV1 { s: s()? },
            "IV2" => IdealDesc::IV2 { s: s()?, b: b()? },
            "IV3" => IdealDesc::IV3 { s: s()?, t: t()?, h: h()? },
            other => return Err(Error::InvalidDescriptor(format!("unknown case tag {other:?}"))),
        };
        desc.validate(k)?;
        Ok(desc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn quad(p: u64, lambda: usize, pk: usize) -> QuadCtx {
        let fq = Arc::new(FieldCtx::new(p, 1, None).unwrap());
        let f = Poly::from_coeffs(vec![fq.from_int(-1), fq.from_int(1)]);
        let chain = Arc::new(ChainCtx::new(fq.clone(), f, lambda, pk).unwrap());
        let omega = chain.one();
        QuadCtx::new(chain, omega)
    }

    #[test]
    fn counts() {
        assert_eq!(count_ideals(5, 1, 1, 2, 1), 431u32.into());
        assert_eq!(count_ideals(3, 1, 1, 2, 1), 40u32.into());
        assert_eq!(count_ideals(3, 1, 1, 3, 1), 64u32.into());
        let q = quad(3, 2, 3);
        assert_eq!(enumerate_ideals(&q.chain).count(), 40);
        let q = quad(5, 2, 5);
        assert_eq!(enumerate_ideals(&q.chain).count(), 431);
    }

    #[test]
    fn named_generators() {
        let q = quad(3, 2, 3);
        let k = &q.chain;
        let unit = IdealDesc::II { s: 0 }.generators(&q).unwrap();
        assert_eq!(unit.g1, q.one());
        let i1 = IdealDesc::I1.generators(&q).unwrap();
        assert_eq!(i1.g1, q.elem(k.zero(), k.pi_pow(5)));
        assert!(q.is_zero(&i1.g2));
        let iv1 = IdealDesc::IV1 { s: 1 }.generators(&q).unwrap();
        assert_eq!(iv1.g1, q.from_chain(k.pi_pow(2)));
        assert_eq!(iv1.g2, q.elem(k.zero(), k.pi_pow(1)));
    }

    #[test]
    fn membership_examples() {
        let q = quad(3, 2, 3);
        let k = &q.chain;
        let all = IdealDesc::II { s: 0 };
        assert!(all.contains(&q, &q.elem(k.from_index(77), k.from_index(500))).unwrap());
        assert!(IdealDesc::I1.contains(&q, &q.elem(k.zero(), k.pi_pow(5))).unwrap());
        assert!(!IdealDesc::I1.contains(&q, &q.one()).unwrap());
    }

    #[test]
    fn rejects_out_of_range() {
        let q = quad(3, 2, 3);
        assert!(IdealDesc::II { s: 7 }.validate(&q.chain).is_err());
        assert!(IdealDesc::IV3 { s: 3, t: 3, h: vec![ResidueKey(vec![0])] }.validate(&q.chain).is_err());
        assert!(IdealDesc::I3 { s: 3, h: vec![] }.validate(&q.chain).is_err());
    }

    #[test]
    fn slow_equality_separates_i1_from_ii() {
        let q = quad(3, 2, 3);
        assert!(!ideal_equal(&IdealDesc::I1, &IdealDesc::II { s: 5 }));
        assert!(!ideal_equal_slow(&q, &IdealDesc::I1, &IdealDesc::II { s: 5 }).unwrap());
        assert!(ideal_equal_slow(&q, &IdealDesc::I1, &IdealDesc::I1).unwrap());
    }
}

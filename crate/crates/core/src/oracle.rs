//! Brute-force ground truth at tiny parameters.
//!
//! Nothing here uses the ideal taxonomy or the echelon normal form. Submodules
//! are compared through `F_q` row-reduced bases of their `K`-spans, and codes
//! through explicit element sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ambient::{field_basis, Ambient, AmbientElem, Twist};
use crate::chain::{ChainCtx, ChainElem};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::Subspace;
use crate::poly::Poly;
use crate::quad::{QuadCtx, QuadElem};

/// Ring scans are refused above this many elements.
pub const RING_GUARD: u128 = 729;
/// Ambient scans and explicit sets are refused above this many elements.
pub const AMBIENT_GUARD: u128 = 531_441;

/// A set of vectors over `F_q`, kept as sorted packed keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    keys: Vec<u128>,
}

fn pack(q: u128, v: &[FieldElem]) -> u128 {
    v.iter().rev().fold(0u128, |acc, c| acc * q + c.index() as u128)
}

impl ElementSet {
    pub fn from_keys(mut keys: Vec<u128>) -> ElementSet {
        keys.sort_unstable();
        keys.dedup();
        ElementSet { keys }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn contains_key(&self, key: u128) -> bool {
        self.keys.binary_search(&key).is_ok()
    }

    /// Additive closure of `gens` inside `F_q^width`. Each generator not yet
    /// in the set multiplies it by `p`, so the work is linear in the final size.
    pub fn additive_closure(fq: &FieldCtx, width: usize, gens: &[Vec<FieldElem>], limit: u128) -> Result<ElementSet> {
        let q = fq.order() as u128;
        let p = fq.characteristic();
        let mut elems: Vec<Vec<FieldElem>> = vec![vec![FieldElem::ZERO; width]];
        let mut seen: std::collections::HashSet<u128> = [0u128].into_iter().collect();
        for g in gens {
            if seen.contains(&pack(q, g)) {
                continue;
            }
            if (elems.len() as u128) * (p as u128) > limit {
                return Err(Error::TooLarge(format!("element set would exceed {limit} elements")));
            }
            let base = elems.clone();
            let mut step = g.clone();
            for _ in 1..p {
                for e in &base {
                    let v: Vec<FieldElem> = e.iter().zip(&step).map(|(&a, &b)| fq.add(a, b)).collect();
                    seen.insert(pack(q, &v));
                    elems.push(v);
                }
                step = step.iter().zip(g).map(|(&a, &b)| fq.add(a, b)).collect();
            }
        }
        Ok(ElementSet::from_keys(seen.into_iter().collect()))
    }

    /// All elements of an `F_q`-subspace.
    pub fn from_subspace(fq: &FieldCtx, sub: &Subspace, limit: u128) -> Result<ElementSet> {
        let mut gens = Vec::new();
        for row in sub.rows() {
            for y in field_basis(fq) {
                gens.push(row.iter().map(|&c| fq.mul(c, y)).collect());
            }
        }
        ElementSet::additive_closure(fq, sub.width(), &gens, limit)
    }
}

/// Flattens `(a0, a1)` into `F_q^{2 d N}`.
pub fn flatten_pair(k: &ChainCtx, a0: &ChainElem, a1: &ChainElem) -> Vec<FieldElem> {
    let d = k.d();
    let mut v = Vec::with_capacity(2 * d * k.nil());
    for a in [a0, a1] {
        for b in a.digits() {
            v.extend(b.to_fixed(d));
        }
    }
    v
}

/// `F_q`-basis of the `K`-span of `rows`: the span of `x^i row` for `i < dN`.
pub fn module_span(k: &ChainCtx, rows: &[(ChainElem, ChainElem)]) -> Subspace {
    let width = 2 * k.d() * k.nil();
    let mut sub = Subspace::new(width);
    let x = k.from_poly(&Poly::x());
    for (a0, a1) in rows {
        let (mut b0, mut b1) = (a0.clone(), a1.clone());
        for _ in 0..k.log_q_size() {
            if b0.is_zero() && b1.is_zero() {
                break;
            }
            sub.insert(&k.fq, flatten_pair(k, &b0, &b1));
            b0 = k.mul(&b0, &x);
            b1 = k.mul(&b1, &x);
        }
    }
    sub
}

/// Elements whose digits outside `lo..hi` vanish, in index order.
fn digit_window(k: &ChainCtx, lo: usize, hi: usize) -> Vec<ChainElem> {
    let q = k.fq.order() as u128;
    let count = q.pow((k.d() * hi.saturating_sub(lo)) as u32);
    (0..count).map(|i| k.shift_up(&k.from_index(i), lo)).collect()
}

/// One generator matrix of a `K`-submodule of `K^2`.
pub type GenMatrix = Vec<(ChainElem, ChainElem)>;

/// Every generator matrix of the nine normal-form shapes for submodules of
/// `K^2`, in shape order.
pub fn submodule_shapes(k: &ChainCtx) -> Result<Vec<GenMatrix>> {
    let size = (k.fq.order() as u128).checked_pow(k.log_q_size() as u32);
    if size.is_none_or(|s| s > RING_GUARD) {
        return Err(Error::TooLarge(format!("submodule scan needs |K| <= {RING_GUARD}")));
    }
    let nil = k.nil();
    let pi = |s: usize| k.pi_pow(s);
    let one = k.one();
    let zero = k.zero();
    let mut out: Vec<GenMatrix> = Vec::new();
    // (1, a)
    for a in digit_window(k, 0, nil) {
        out.push(vec![(one.clone(), a)]);
    }
    // (pi^s, pi^s a), a mod pi^{N-s}
    for s in 1..nil {
        for a in digit_window(k, 0, nil - s) {
            out.push(vec![(pi(s), k.shift_up(&a, s))]);
        }
    }
    // (pi b, 1), b mod pi^{N-1}
    for b in digit_window(k, 0, nil - 1) {
        out.push(vec![(k.shift_up(&b, 1), one.clone())]);
    }
    // (pi^{s+1} b, pi^s), b mod pi^{N-1-s}
    for s in 1..nil {
        for b in digit_window(k, 0, nil - 1 - s) {
            out.push(vec![(k.shift_up(&b, s + 1), pi(s))]);
        }
    }
    // diag(pi^s, pi^s)
    for s in 0..=nil {
        out.push(vec![(pi(s), zero.clone()), (zero.clone(), pi(s))]);
    }
    // [[1, c], [0, pi^t]], c mod pi^t
    for t in 1..nil {
        for c in digit_window(k, 0, t) {
            out.push(vec![(one.clone(), c), (zero.clone(), pi(t))]);
        }
    }
    // [[pi^s, pi^s c], [0, pi^{s+t}]]
    for s in 1..nil.saturating_sub(1) {
        for t in 1..nil - s {
            for c in digit_window(k, 0, t) {
                out.push(vec![(pi(s), k.shift_up(&c, s)), (zero.clone(), pi(s + t))]);
            }
        }
    }
    // [[c, 1], [pi^t, 0]], c in pi K mod pi^t
    for t in 1..nil {
        for c in digit_window(k, 1, t) {
            out.push(vec![(c, one.clone()), (pi(t), zero.clone())]);
        }
    }
    // [[pi^s c, pi^s], [pi^{s+t}, 0]]
    for s in 1..nil.saturating_sub(1) {
        for t in 1..nil - s {
            for c in digit_window(k, 1, t) {
                out.push(vec![(k.shift_up(&c, s), pi(s)), (pi(s + t), zero.clone())]);
            }
        }
    }
    Ok(out)
}

/// All `K`-submodules of `K^2` as canonical `F_q` bases. Fails if two shapes
/// produce the same submodule.
pub fn bf_submodules(k: &ChainCtx) -> Result<Vec<(GenMatrix, Subspace)>> {
    let shapes = submodule_shapes(k)?;
    let spans: Vec<Subspace> = shapes.par_iter().map(|g| module_span(k, g)).collect();
    let mut seen = std::collections::HashSet::new();
    for s in &spans {
        if !seen.insert(s.rows().to_vec()) {
            return Err(Error::Invariant("two normal-form shapes give the same submodule".into()));
        }
    }
    Ok(shapes.into_iter().zip(spans).collect())
}

/// Submodules closed under `(a0, a1) -> (u^2 a1, a0)`, i.e. those that are
/// ideals of `K + uK` under `(a0, a1) -> a0 + u a1`. Checking generator rows
/// suffices because the map is `K`-linear.
pub fn bf_condition4_filter(q: &QuadCtx) -> Result<Vec<(GenMatrix, Subspace)>> {
    let k = &q.chain;
    let all = bf_submodules(k)?;
    Ok(all
        .into_par_iter()
        .filter(|(g, span)| {
            g.iter().all(|(a0, a1)| {
                let image = flatten_pair(k, &k.mul(&q.u2, a1), a0);
                span.contains(&k.fq, &image)
            })
        })
        .collect())
}

/// `F_q`-basis of the ideal generated by `gens` in `K + uK`.
pub fn quad_ideal_span(q: &QuadCtx, gens: &[QuadElem]) -> Subspace {
    let rows: Vec<_> = gens.iter().flat_map(|g| [g.clone(), q.times_u(g)]).map(|e| (e.a0, e.a1)).collect();
    module_span(&q.chain, &rows)
}

/// Explicit element set of the ideal generated by `gens` in `K + uK`, from
/// additive generators `y^l x^i u^j g`.
pub fn quad_ideal_elements(q: &QuadCtx, gens: &[QuadElem]) -> Result<ElementSet> {
    let k = &q.chain;
    let x = k.from_poly(&Poly::x());
    let ys: Vec<ChainElem> = field_basis(&k.fq).into_iter().map(|y| k.from_field(y)).collect();
    let mut add_gens = Vec::new();
    for g in gens {
        for v in [g.clone(), q.times_u(g)] {
            let mut cur = v;
            for _ in 0..k.log_q_size() {
                for y in &ys {
                    let e = q.scale(&cur, y);
                    add_gens.push(flatten_pair(k, &e.a0, &e.a1));
                }
                cur = q.scale(&cur, &x);
            }
        }
    }
    ElementSet::additive_closure(&k.fq, 2 * k.d() * k.nil(), &add_gens, AMBIENT_GUARD)
}

/// Explicit codeword set of the `R[x]`-module generated by `gens`.
pub fn bf_codewords<S: Twist>(amb: &Ambient, gens: &[AmbientElem<S>]) -> Result<ElementSet> {
    let mut add_gens = Vec::new();
    let u = amb.u();
    for g in gens {
        let mut xi = g.clone();
        for _ in 0..amb.len() {
            let mut uj = xi.clone();
            for _ in 0..amb.e() {
                for y in field_basis(&amb.fq) {
                    add_gens.push(amb.scale(&uj, y).flat().to_vec());
                }
                uj = amb.r_scale(&uj, &u);
            }
            xi = amb.x_shift(&xi);
        }
    }
    ElementSet::additive_closure(&amb.fq, amb.width(), &add_gens, AMBIENT_GUARD)
}

/// The linear forms `b -> [a, b]_j` (one per u-digit `j`) for `a` in `basis`.
fn inner_forms(amb: &Ambient, basis: &[Vec<FieldElem>]) -> Subspace {
    let fq = &amb.fq;
    let e = amb.e();
    let mut forms = Subspace::new(amb.width());
    for a in basis {
        for j in 0..e {
            // coefficient of b[i, jj] in digit j of [a, b] is a[i, j - jj]
            let mut form = vec![FieldElem::ZERO; amb.width()];
            for i in 0..amb.len() {
                for jj in 0..=j {
                    form[i * e + jj] = a[i * e + j - jj];
                }
            }
            forms.insert(fq, form);
        }
    }
    forms
}

fn decode(q: u128, width: usize, mut key: u128) -> Vec<u32> {
    let mut v = vec![0u32; width];
    for c in v.iter_mut() {
        *c = (key % q) as u32;
        key /= q;
    }
    v
}

/// Euclidean orthogonal complement by scanning the whole ambient space.
pub fn bf_orthogonal_complement(amb: &Ambient, cw: &ElementSet) -> Result<ElementSet> {
    let fq = &amb.fq;
    let q = fq.order() as u128;
    let total = q
        .checked_pow(amb.width() as u32)
        .filter(|&t| t <= AMBIENT_GUARD)
        .ok_or_else(|| Error::TooLarge(format!("ambient scan needs |R|^L <= {AMBIENT_GUARD}")))?;
    let mut basis = Subspace::new(amb.width());
    for &key in cw.keys() {
        let v: Vec<FieldElem> = decode(q, amb.width(), key).into_iter().map(|c| fq.elem(c)).collect();
        basis.insert(fq, v);
    }
    let forms = inner_forms(amb, basis.rows());
    let rows = forms.rows();
    let keys: Vec<u128> = (0..total)
        .into_par_iter()
        .filter(|&key| {
            let b = decode(q, amb.width(), key);
            rows.iter().all(|form| {
                let dot = form.iter().zip(&b).fold(FieldElem::ZERO, |acc, (&f, &x)| fq.add(acc, fq.mul(f, fq.elem(x))));
                dot.is_zero()
            })
        })
        .collect();
    Ok(ElementSet::from_keys(keys))
}

/// Orthogonal complement of the code generated by `gens`, as the null space
/// of the inner-product forms of its `F_q`-span. No size guard.
pub fn orthogonal_complement_kernel<S: Twist>(amb: &Ambient, gens: &[AmbientElem<S>]) -> Subspace {
    let span = amb.span(gens);
    inner_forms(amb, span.rows()).null_space(&amb.fq)
}

/// `log_p` of the number of elements in an `F_q`-subspace.
pub fn subspace_logp(fq: &FieldCtx, s: &Subspace) -> usize {
    s.rank() * fq.degree()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check: String,
    pub params: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(check: &str, params: &str, expected: impl ToString, got: impl ToString) -> OracleReport {
        let (expected, got) = (expected.to_string(), got.to_string());
        OracleReport { check: check.into(), params: params.into(), pass: expected == got, expected, got }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeParams;

    #[test]
    fn trivial_sets() {
        let params = CodeParams::from_ints(3, 1, 1, 1, 2, &[1], &[1], 0).unwrap();
        let amb = &params.ambient;
        let none: Vec<AmbientElem<crate::ambient::Primal>> = Vec::new();
        let zero = bf_codewords(amb, &none).unwrap();
        assert_eq!(zero.len(), 1);
        let full = bf_codewords(amb, &[amb.one::<crate::ambient::Primal>()]).unwrap();
        assert_eq!(full.len(), 531_441);
        assert_eq!(bf_orthogonal_complement(amb, &zero).unwrap(), full);
        assert_eq!(bf_orthogonal_complement(amb, &full).unwrap(), zero);
    }
}

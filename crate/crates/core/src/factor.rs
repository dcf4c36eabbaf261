//! Factorization of `x^n - delta0` over `F_{p^m}` when `gcd(n, p) = 1`.
//!
//! The binomial is squarefree under that condition, so distinct-degree
//! factorization followed by Cantor–Zassenhaus equal-degree splitting is
//! complete. Randomness is drawn from a seeded ChaCha stream; the sorted
//! output does not depend on the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{Poly, PolyRing};

/// `x^n - c`.
pub fn binomial(fq: &FieldCtx, n: usize, c: FieldElem) -> Poly {
    let mut coeffs = vec![FieldElem::ZERO; n + 1];
    coeffs[0] = fq.neg(c);
    coeffs[n] = FieldElem::ONE;
    Poly::from_coeffs(coeffs)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Monic irreducible factors of `x^n - delta0`, sorted by degree and then by
/// coefficients from the constant term upward.
pub fn factor_xn_minus(fq: &FieldCtx, delta0: FieldElem, n: usize, seed: u64) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    if gcd_u64(n as u64, fq.characteristic()) != 1 {
        return Err(Error::NotCoprimeToP { n, p: fq.characteristic() });
    }
    if delta0.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = binomial(fq, n, delta0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(fq, &f) {
        equal_degree(fq, &g, d, &mut rng, &mut out);
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
/// Returns `(product, degree)` pairs.
pub fn distinct_degree(fq: &FieldCtx, f: &Poly) -> Vec<(Poly, usize)> {
    let ring = fq.poly_ring();
    let mut rest = ring.monic(f);
    let mut out = Vec::new();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = ring.frobenius_mod(&h, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = ring.div_exact(&rest, &g).expect("gcd divides");
            h = ring.rem(&h, &rest).expect("nonzero");
            out.push((g, d));
        }
    }
    out
}

fn random_poly(fq: &FieldCtx, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = fq.order() as u32;
    Poly::from_coeffs((0..below).map(|_| fq.elem(rng.gen_range(0..q))).collect())
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(fq: &FieldCtx, g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let ring = fq.poly_ring();
    let deg = g.degree().expect("nonzero");
    if deg == d {
        out.push(ring.monic(g));
        return;
    }
    let half = (fq.order() - 1) / 2;
    loop {
        let a = random_poly(fq, deg, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // a^{(q^d - 1)/2} = (a * a^q * ... * a^{q^{d-1}})^{(q-1)/2}
        let mut norm = Poly::one();
        let mut conj = ring.rem(&a, g).expect("nonzero");
        for _ in 0..d {
            norm = ring.mul_mod(&norm, &conj, g);
            conj = ring.frobenius_mod(&conj, g);
        }
        let b = ring.pow_mod(&norm, half, g);
        let cand = ring.gcd(&ring.sub(&b, &Poly::one()), g);
        let cd = cand.degree().unwrap_or(0);
        if cd > 0 && cd < deg {
            let other = ring.div_exact(g, &cand).expect("gcd divides");
            equal_degree(fq, &cand, d, rng, out);
            equal_degree(fq, &other, d, rng, out);
            return;
        }
    }
}

/// Product of a list of polynomials.
pub fn product(ring: &PolyRing<'_>, polys: &[Poly]) -> Poly {
    polys.iter().fold(Poly::one(), |acc, f| ring.mul(&acc, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(fq: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&v| fq.from_int(v)).collect())
    }

    #[test]
    fn linear_case() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        let fs = factor_xn_minus(&f5, f5.from_int(2), 1, 0).unwrap();
        assert_eq!(fs, vec![p(&f5, &[3, 1])]);
    }

    #[test]
    fn x2_minus_1_over_f3() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let fs = factor_xn_minus(&f3, FieldElem::ONE, 2, 0).unwrap();
        assert_eq!(fs, vec![p(&f3, &[1, 1]), p(&f3, &[2, 1])]);
    }

    #[test]
    fn rejects_non_coprime_length() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(factor_xn_minus(&f5, FieldElem::ONE, 5, 0).unwrap_err(), Error::NotCoprimeToP { n: 5, p: 5 });
    }

    #[test]
    fn product_and_irreducibility() {
        for (pp, m, n) in [(3, 1, 8), (3, 2, 8), (5, 1, 12), (7, 1, 9), (3, 1, 13), (5, 2, 6)] {
            let fq = FieldCtx::new(pp, m, None).unwrap();
            let ring = fq.poly_ring();
            for delta0 in [FieldElem::ONE, fq.from_int(2)] {
                let fs = factor_xn_minus(&fq, delta0, n, 7).unwrap();
                assert_eq!(product(&ring, &fs), binomial(&fq, n, delta0));
                for (i, f) in fs.iter().enumerate() {
                    assert_eq!(f.lead(), FieldElem::ONE);
                    assert!(ring.is_irreducible(f));
                    for g in &fs[i + 1..] {
                        assert!(ring.gcd(f, g).is_one());
                    }
                }
                assert_eq!(fs, factor_xn_minus(&fq, delta0, n, 12345).unwrap());
            }
        }
    }
}

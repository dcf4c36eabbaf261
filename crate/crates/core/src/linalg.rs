//! Subspaces of `F_q^w` in reduced row echelon form.

use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    width: usize,
    /// Reduced rows sorted by pivot column; each pivot entry is 1.
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(width: usize) -> Subspace {
        Subspace { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I>(fq: &FieldCtx, width: usize, rows: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<FieldElem>>,
    {
        let mut s = Subspace::new(width);
        for r in rows {
            s.insert(fq, r);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, fq: &FieldCtx, v: &mut [FieldElem]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(piv) {
                *x = fq.sub(*x, fq.mul(c, r));
            }
        }
    }

    pub fn contains(&self, fq: &FieldCtx, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(fq, &mut w);
        w.iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, fq: &FieldCtx, mut v: Vec<FieldElem>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(fq, &mut v);
        let Some(piv) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = fq.inv(v[piv]).expect("nonzero pivot");
        for x in v.iter_mut().skip(piv) {
            *x = fq.mul(*x, inv);
        }
        for row in &mut self.rows {
            let c = row[piv];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v).skip(piv) {
                *x = fq.sub(*x, fq.mul(c, r));
            }
        }
        let pos = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, v);
        true
    }

    /// Null space of the matrix whose rows are this basis: all `x` with
    /// `row . x = 0` for every row.
    pub fn null_space(&self, fq: &FieldCtx) -> Subspace {
        let free: Vec<usize> = (0..self.width).filter(|c| !self.pivots.contains(c)).collect();
        let mut out = Subspace::new(self.width);
        for &f in &free {
            let mut v = vec![FieldElem::ZERO; self.width];
            v[f] = FieldElem::ONE;
            for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                v[piv] = fq.neg(row[f]);
            }
            out.insert(fq, v);
        }
        out
    }

    pub fn is_subspace_of(&self, fq: &FieldCtx, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(fq, r))
    }
}

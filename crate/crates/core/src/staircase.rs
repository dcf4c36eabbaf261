//! Normal form of `K`-submodules of `K^2`.
//!
//! Every submodule has a unique echelon basis `(pi^v, p1), (0, pi^w)` with
//! `p1` reduced modulo `pi^w`. The basis is found by row operations only:
//! pick the row whose first entry has minimal `pi`-degree, scale it to
//! `pi^v`, clear the first column of every other row with it, and collect
//! what is left in the second column. The annihilated multiple
//! `pi^{N-v} (pi^v, p1) = (0, pi^{N-v} p1)` must also be collected.

use crate::chain::{ChainCtx, ChainElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    /// `pi`-degree of the first-column ideal (`N` when it is zero).
    pub v: usize,
    /// Second entry of the pivot row, reduced mod `pi^w`.
    pub p1: ChainElem,
    /// `pi`-degree of the second-column ideal.
    pub w: usize,
}

impl Staircase {
    pub fn from_rows(k: &ChainCtx, rows: &[(ChainElem, ChainElem)]) -> Staircase {
        let nil = k.nil();
        let pivot = rows.iter().map(|(a0, _)| k.pi_degree(a0)).enumerate().min_by_key(|&(i, v)| (v, i));
        let (v, p1) = match pivot {
            Some((i, v)) if v < nil => {
                let unit = k.shift_down(&rows[i].0, v);
                let inv = k.inv(&unit).expect("shifted pivot is a unit");
                (v, k.mul(&rows[i].1, &inv))
            }
            _ => (nil, k.zero()),
        };
        let mut w = nil;
        let mut absorb = |x: &ChainElem| w = w.min(k.pi_degree(x));
        for (a0, a1) in rows {
            let residual = if v < nil {
                let c = k.shift_down(a0, v);
                k.sub(a1, &k.mul(&c, &p1))
            } else {
                a1.clone()
            };
            absorb(&residual);
        }
        if v < nil {
            absorb(&k.shift_up(&p1, nil - v));
        }
        Staircase { v, p1: k.truncate(&p1, w), w }
    }

    /// `log_q` of the submodule size divided by `deg f`: `2N - v - w`.
    pub fn colength(&self, k: &ChainCtx) -> usize {
        2 * k.nil() - self.v - self.w
    }

    pub fn contains(&self, k: &ChainCtx, x0: &ChainElem, x1: &ChainElem) -> bool {
        if k.pi_degree(x0) < self.v {
            return false;
        }
        let rest = if self.v < k.nil() {
            let c = k.shift_down(x0, self.v);
            k.sub(x1, &k.mul(&c, &self.p1))
        } else {
            x1.clone()
        };
        k.pi_degree(&rest) >= self.w
    }

    /// The echelon rows `(pi^v, p1)` and `(0, pi^w)`.
    pub fn rows(&self, k: &ChainCtx) -> [(ChainElem, ChainElem); 2] {
        [(k.pi_pow(self.v), self.p1.clone()), (k.zero(), k.pi_pow(self.w))]
    }
}

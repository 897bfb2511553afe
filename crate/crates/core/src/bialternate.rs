//! Bialternate sum `A ⋄ A` over the descending-pair list
//! `(2,1), (3,1), …, (n,1), (3,2), …, (n,n-1)`.
//!
//! Entry `(x, y)`, with `(p, q)` the pair at position `x` and `(r, s)` the
//! pair at position `y`, is
//! `a_pr δ_qs + a_qs δ_pr - a_ps δ_qr - a_qr δ_ps`.
//! Reversing each pair gives the lexicographic list that indexes `A^[2]`,
//! position for position, and the two matrices coincide.

use alloc::vec::Vec;

use crate::compound::add_compound;
use crate::{Error, Matrix, Result};

/// Ordered pairs `(p, q)`, `p > q`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairList {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairList {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for q in 0..n {
            for p in q + 1..n {
                pairs.push((p, q));
            }
        }
        PairList { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The list with each pair reversed: `(1,2), (1,3), …` in lexicographic
    /// order.
    pub fn reversed_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(p, q)| (q, p)).collect()
    }
}

fn require_n2(a: &Matrix) -> Result<usize> {
    let n = a.require_square()?;
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "matrix order n",
            value: n as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    Ok(n)
}

/// `A ⋄ A`, a C(n,2) × C(n,2) matrix.
pub fn bialternate_sum_self(a: &Matrix) -> Result<Matrix> {
    let n = require_n2(a)?;
    let list = PairList::new(n);
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let dim = list.len();
    let mut out = Matrix::zeros(dim, dim);
    for (x, &(p, q)) in list.pairs().iter().enumerate() {
        for (y, &(r, s)) in list.pairs().iter().enumerate() {
            out[(x, y)] = a[(p, r)] * delta(q, s) + a[(q, s)] * delta(p, r)
                - a[(p, s)] * delta(q, r)
                - a[(q, r)] * delta(p, s);
        }
    }
    Ok(out)
}

/// Largest entrywise gap between `A ⋄ A` and `A^[2]`.
pub fn verify_prop4(a: &Matrix) -> Result<f64> {
    require_n2(a)?;
    bialternate_sum_self(a)?.max_abs_diff(&add_compound(a, 2)?)
}

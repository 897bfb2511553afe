//! Multiplicative and additive compound matrices.
//!
//! Rows and columns of `A^(k)` and `A^[k]` are indexed by the k-subsets of
//! the row (column) indices of `A`, ordered lexicographically. Subsets are
//! stored 0-based: the subset `{1, 3}` of the usual 1-based notation is
//! `[0, 2]` here.

use alloc::vec::Vec;

pub use crate::num::binomial;
use crate::{Error, Matrix, Result};

/// Largest ground set for which subset ranks are computed.
pub const MAX_GROUND_SET: usize = 32;
/// Largest compound order accepted.
pub const MAX_ORDER: usize = 12;
/// Largest compound dimension C(n, k) accepted.
pub const MAX_COMPOUND_DIM: usize = 5000;

/// Lexicographically ordered k-subsets of `{0, .., n-1}` with ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexIndex {
    n: usize,
    k: usize,
    flat: Vec<usize>,
}

impl LexIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::OutOfRange {
                what: "ground set size n",
                value: n as i64,
                min: 1,
                max: MAX_GROUND_SET as i64,
            });
        }
        if k == 0 || k > n || k > MAX_ORDER {
            return Err(Error::OutOfRange {
                what: "compound order k",
                value: k as i64,
                min: 1,
                max: n.min(MAX_ORDER) as i64,
            });
        }
        let len = binomial(n, k);
        if len > MAX_COMPOUND_DIM {
            return Err(Error::TooLarge {
                what: "compound",
                dim: len,
                cap: MAX_COMPOUND_DIM,
            });
        }
        let mut flat = Vec::with_capacity(len * k);
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            flat.extend_from_slice(&cur);
            // advance to the next subset in lexicographic order
            let mut t = k;
            loop {
                if t == 0 {
                    debug_assert_eq!(flat.len(), len * k);
                    return Ok(LexIndex { n, k, flat });
                }
                t -= 1;
                if cur[t] < n - k + t {
                    break;
                }
            }
            cur[t] += 1;
            for s in t + 1..k {
                cur[s] = cur[s - 1] + 1;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of subsets, C(n, k).
    pub fn len(&self) -> usize {
        self.flat.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    /// The subset at flat position `i`.
    pub fn unrank(&self, i: usize) -> &[usize] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.flat.chunks_exact(self.k)
    }

    /// Position of a strictly increasing subset, or `None` if `subset` is not
    /// a valid k-subset of this ground set.
    pub fn rank(&self, subset: &[usize]) -> Option<usize> {
        if subset.len() != self.k {
            return None;
        }
        let (n, k) = (self.n, self.k);
        let mut rank = 0;
        let mut lo = 0;
        for (t, &c) in subset.iter().enumerate() {
            if c < lo || c >= n {
                return None;
            }
            for v in lo..c {
                rank += binomial(n - 1 - v, k - 1 - t);
            }
            lo = c + 1;
        }
        Some(rank)
    }
}

/// Determinant of a small square block, closed form up to 3×3.
fn minor_det(m: &Matrix) -> f64 {
    let s = m.as_slice();
    match m.rows() {
        1 => s[0],
        2 => s[0] * s[3] - s[1] * s[2],
        3 => {
            s[0] * (s[4] * s[8] - s[5] * s[7]) - s[1] * (s[3] * s[8] - s[5] * s[6])
                + s[2] * (s[3] * s[7] - s[4] * s[6])
        }
        _ => m.lu().map(|lu| lu.det()).unwrap_or(0.0),
    }
}

fn check_order(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::OutOfRange {
            what: "compound order k",
            value: k as i64,
            min: 1,
            max: max as i64,
        });
    }
    Ok(())
}

/// k-multiplicative compound `A^(k)`: the C(rows,k) × C(cols,k) matrix of all
/// k-minors of `a`.
pub fn mult_compound(a: &Matrix, k: usize) -> Result<Matrix> {
    check_order(k, a.rows().min(a.cols()))?;
    let rows = LexIndex::new(a.rows(), k)?;
    let cols = LexIndex::new(a.cols(), k)?;
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (i, ri) in rows.iter().enumerate() {
        for (j, cj) in cols.iter().enumerate() {
            out[(i, j)] = minor_det(&a.submatrix(ri, cj));
        }
    }
    Ok(out)
}

/// k-additive compound `A^[k]`, the ε-linear part of `(I + εA)^(k)`.
///
/// Entry `(I, I)` is `Σ_{i∈I} a_ii`. When `I = S ∪ {i}` and `J = S ∪ {j}`
/// with `i ≠ j`, entry `(I, J)` is `(-1)^{pos_I(i) + pos_J(j)} a_ij`. All
/// other entries vanish.
pub fn add_compound(a: &Matrix, k: usize) -> Result<Matrix> {
    let n = a.require_square()?;
    check_order(k, n)?;
    let index = LexIndex::new(n, k)?;
    let mut out = Matrix::zeros(index.len(), index.len());
    let mut other = Vec::with_capacity(k);
    for (row, subset) in index.iter().enumerate() {
        out[(row, row)] = subset.iter().map(|&i| a[(i, i)]).sum();
        for (pos_i, &i) in subset.iter().enumerate() {
            for j in (0..n).filter(|j| !subset.contains(j)) {
                other.clear();
                other.extend(subset.iter().copied().filter(|&s| s != i));
                let pos_j = other.partition_point(|&s| s < j);
                other.insert(pos_j, j);
                let col = index.rank(&other).expect("valid subset");
                let sign = if (pos_i + pos_j) % 2 == 0 { 1.0 } else { -1.0 };
                out[(row, col)] = sign * a[(i, j)];
            }
        }
    }
    Ok(out)
}

/// `A^[2]` assembled entrywise from the four-term Kronecker-delta rule over
/// lexicographic pairs `(i1, i2)`, `(j1, j2)`:
/// `δ(i1,j1) a(i2,j2) + δ(i2,j2) a(i1,j1) - δ(i1,j2) a(i2,j1) - δ(i2,j1) a(i1,j2)`.
pub fn add_compound2_explicit(a: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "matrix order n",
            value: n as i64,
            min: 2,
            max: MAX_GROUND_SET as i64,
        });
    }
    let pairs = LexIndex::new(n, 2)?;
    let delta = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    let mut out = Matrix::zeros(pairs.len(), pairs.len());
    for (x, ip) in pairs.iter().enumerate() {
        let (i1, i2) = (ip[0], ip[1]);
        for (y, jp) in pairs.iter().enumerate() {
            let (j1, j2) = (jp[0], jp[1]);
            out[(x, y)] = delta(i1, j1) * a[(i2, j2)] + delta(i2, j2) * a[(i1, j1)]
                - delta(i1, j2) * a[(i2, j1)]
                - delta(i2, j1) * a[(i1, j2)];
        }
    }
    Ok(out)
}

/// `max |(AB)^(k) - A^(k) B^(k)|`, the Cauchy–Binet residual.
pub fn cauchy_binet_residual(a: &Matrix, b: &Matrix, k: usize) -> Result<f64> {
    let ab = a.matmul(b)?;
    let lhs = mult_compound(&ab, k)?;
    let rhs = mult_compound(a, k)?.matmul(&mult_compound(b, k)?)?;
    lhs.max_abs_diff(&rhs)
}

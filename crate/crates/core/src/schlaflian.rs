//! Degree-p monomial vectors `s_p(z)` and the upper/lower Schläflian matrices.
//!
//! `U_p(A)` is defined by `s_p(Az) = U_p(A) s_p(z)` for all `z`, and
//! `L_p(A) = d/dt|₀ U_p(e^{At})`, so that `ż = Az` implies
//! `d/dt s_p(z) = L_p(A) s_p(z)`.
//!
//! A monomial `z_{c_1} z_{c_2} ⋯ z_{c_p}` is stored as its nondecreasing index
//! tuple `(c_1 ≤ … ≤ c_p)` (0-based); the basis lists tuples in ascending
//! lexicographic order, which for `n = p = 2` gives `(z₁², z₁z₂, z₂²)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::num::binomial;
use crate::{Error, Matrix, Result};

/// Largest basis size `r_p(n)` accepted.
pub const MAX_BASIS_DIM: usize = 5000;

/// `r_p(n) = C(n + p - 1, p)`, the number of degree-p monomials in n variables.
pub fn basis_dim(n: usize, p: usize) -> usize {
    binomial(n + p - 1, p)
}

/// Ordered degree-p monomials in n variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    p: usize,
    tuples: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "number of variables n",
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        if p == 0 {
            return Err(Error::OutOfRange {
                what: "degree p",
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        let dim = basis_dim(n, p);
        if dim > MAX_BASIS_DIM {
            return Err(Error::TooLarge {
                what: "Schlaflian",
                dim,
                cap: MAX_BASIS_DIM,
            });
        }
        Ok(Self::build(n, p))
    }

    /// Unchecked construction; also used for the degree-0 basis.
    fn build(n: usize, p: usize) -> Self {
        let mut tuples = Vec::with_capacity(basis_dim(n, p).max(1) * p);
        let mut cur = vec![0usize; p];
        loop {
            tuples.extend_from_slice(&cur);
            let mut t = p;
            loop {
                if t == 0 {
                    return MonomialBasis { n, p, tuples };
                }
                t -= 1;
                if cur[t] < n - 1 {
                    break;
                }
            }
            cur[t] += 1;
            for s in t + 1..p {
                cur[s] = cur[t];
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.tuples.len().checked_div(self.p).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nondecreasing variable-index tuple of monomial `i`.
    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i * self.p..(i + 1) * self.p]
    }

    /// Exponent vector `(p_1, …, p_n)` of monomial `i`.
    pub fn exponents(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.n];
        for &c in self.tuple(i) {
            e[c] += 1;
        }
        e
    }

    /// Position of a nondecreasing tuple.
    pub fn rank(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.p {
            return None;
        }
        let n = self.n;
        let mut rank = 0;
        let mut lo = 0;
        for (t, &c) in tuple.iter().enumerate() {
            if c < lo || c >= n {
                return None;
            }
            let rest = self.p - 1 - t;
            for v in lo..c {
                // nondecreasing tuples of length `rest` over {v, .., n-1}
                rank += binomial(n - v + rest - 1, rest);
            }
            lo = c;
        }
        Some(rank)
    }

    /// Position of the exponent vector `e`.
    pub fn rank_exponents(&self, e: &[u32]) -> Option<usize> {
        if e.len() != self.n {
            return None;
        }
        let mut tuple = Vec::with_capacity(self.p);
        for (i, &k) in e.iter().enumerate() {
            tuple.extend(core::iter::repeat_n(i, k as usize));
        }
        self.rank(&tuple)
    }

    /// Rank of tuple `i` with one extra variable `j` multiplied in, in the
    /// degree `p + 1` basis `up`.
    fn rank_times(
        &self,
        i: usize,
        j: usize,
        up: &MonomialBasis,
        scratch: &mut Vec<usize>,
    ) -> usize {
        scratch.clear();
        scratch.extend_from_slice(self.tuple(i));
        let pos = scratch.partition_point(|&c| c <= j);
        scratch.insert(pos, j);
        up.rank(scratch).expect("valid tuple")
    }
}

/// Values of the monomials of `basis` at `z`.
pub fn s_p_eval(basis: &MonomialBasis, z: &[f64]) -> Result<Vec<f64>> {
    if z.len() != basis.n {
        return Err(Error::DimensionMismatch {
            op: "s_p_eval",
            left: (basis.n, 1),
            right: (z.len(), 1),
        });
    }
    Ok((0..basis.len())
        .map(|i| basis.tuple(i).iter().map(|&c| z[c]).product())
        .collect())
}

/// Upper Schläflian `U_p(A)`, by expanding each `Π_t (A z)_{c_t}` in the
/// monomial basis.
pub fn upper_schlaflian(a: &Matrix, p: usize) -> Result<Matrix> {
    let n = a.require_square()?;
    let top = MonomialBasis::new(n, p)?;
    let bases: Vec<MonomialBasis> = (0..p).map(|d| MonomialBasis::build(n, d)).collect();

    // step[d][i * n + j]: rank in degree d+1 of (monomial i of degree d) · z_j
    let mut scratch = Vec::with_capacity(p + 1);
    let step: Vec<Vec<usize>> = (0..p)
        .map(|d| {
            let up = if d + 1 == p { &top } else { &bases[d + 1] };
            let cur = &bases[d];
            let mut table = Vec::with_capacity(cur.len() * n);
            for i in 0..cur.len() {
                for j in 0..n {
                    table.push(cur.rank_times(i, j, up, &mut scratch));
                }
            }
            table
        })
        .collect();

    let dim = top.len();
    let mut out = Matrix::zeros(dim, dim);
    let mut poly = Vec::with_capacity(dim);
    let mut next = Vec::with_capacity(dim);
    for row in 0..dim {
        poly.clear();
        poly.push(1.0);
        for (d, &c) in top.tuple(row).iter().enumerate() {
            let up_len = if d + 1 == p { dim } else { bases[d + 1].len() };
            next.clear();
            next.resize(up_len, 0.0);
            for (i, &coef) in poly.iter().enumerate() {
                if coef == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let aij = a[(c, j)];
                    if aij != 0.0 {
                        next[step[d][i * n + j]] += coef * aij;
                    }
                }
            }
            core::mem::swap(&mut poly, &mut next);
        }
        for (col, &v) in poly.iter().enumerate() {
            out[(row, col)] = v;
        }
    }
    Ok(out)
}

/// Lower Schläflian `L_p(A)`, the ε-linear part of `U_p(I + εA)`: row
/// `(c_1, …, c_p)` collects `a_{c_t j}` at the monomial with `c_t` replaced
/// by `j`, for every position `t` and variable `j`.
pub fn lower_schlaflian(a: &Matrix, p: usize) -> Result<Matrix> {
    let n = a.require_square()?;
    let basis = MonomialBasis::new(n, p)?;
    let dim = basis.len();
    let mut out = Matrix::zeros(dim, dim);
    let mut scratch = Vec::with_capacity(p);
    for row in 0..dim {
        let tuple = basis.tuple(row);
        for t in 0..p {
            let c = tuple[t];
            for j in 0..n {
                let acj = a[(c, j)];
                if acj == 0.0 {
                    continue;
                }
                scratch.clear();
                scratch.extend(
                    tuple
                        .iter()
                        .enumerate()
                        .filter(|&(s, _)| s != t)
                        .map(|(_, &v)| v),
                );
                let pos = scratch.partition_point(|&v| v <= j);
                scratch.insert(pos, j);
                let col = basis.rank(&scratch).expect("valid tuple");
                out[(row, col)] += acj;
            }
        }
    }
    Ok(out)
}

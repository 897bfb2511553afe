//! Dense real matrices and the determinant carrier used by every guardian map.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::num;
use crate::{Error, Result};

/// LU pivots smaller than this fraction of the largest input entry count as
/// zero when deciding the sign of a determinant.
pub const ZERO_PIVOT_RTOL: f64 = 1e-12;

/// Dense row-major real matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data, rejecting empty shapes, length
    /// mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::InvalidShape {
                    rows: nrows,
                    cols: ncols,
                    len: data.len() + r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(nrows, ncols, data)
    }

    /// Internal constructor for results of arithmetic on valid matrices.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_raw(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_raw(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Column vector (n × 1).
    pub fn column(values: &[f64]) -> Self {
        Matrix::from_raw(values.len(), 1, values.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Returns the order of a square matrix.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        (i < self.rows && j < self.cols).then(|| self.data[i * self.cols + j])
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x * s).collect(),
        )
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(num::abs(*x)))
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| num::abs(self[(i, j)])).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    fn check_same_shape(&self, other: &Matrix, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Matrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Matrix::from_raw(self.rows, self.cols, data)
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.check_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max(num::abs(a - b))))
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            let out_row = &mut out[i * n..(i + 1) * n];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                let b_row = &other.data[p * n..(p + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Matrix::from_raw(m, n, out))
    }

    /// Rows `rows` and columns `cols` of `self`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Partially pivoted LU factorization of a square matrix.
    pub fn lu(&self) -> Result<Lu> {
        let n = self.require_square()?;
        let scale = self.max_abs();
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0usize;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, num::abs(a[i * n + k])))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            min_pivot = min_pivot.min(pmax);
            let pivot = a[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let factor = a[i * n + k] / pivot;
                if factor == 0.0 {
                    continue;
                }
                a[i * n + k] = factor;
                for j in k + 1..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        Ok(Lu {
            n,
            lu: a,
            perm,
            odd_swaps: swaps % 2 == 1,
            min_pivot,
            scale,
        })
    }

    /// Sign and natural log of `|det|`, with sign 0 when a pivot falls below
    /// [`ZERO_PIVOT_RTOL`] times the largest entry.
    pub fn det_signed_log(&self) -> Result<GuardianValue> {
        Ok(self.lu()?.guardian_value())
    }

    /// As [`Matrix::det_signed_log`], with pivots also compared against
    /// `reference` when that exceeds the largest entry. Used when `self` is
    /// built linearly from another matrix whose scale is the meaningful one:
    /// `[a₁₁ + a₂₂]` is "zero" relative to `a`, never relative to itself.
    pub fn det_signed_log_relative_to(&self, reference: f64) -> Result<GuardianValue> {
        let mut lu = self.lu()?;
        lu.scale = lu.scale.max(reference);
        Ok(lu.guardian_value())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let lu = self.lu()?;
        lu.solve(&Matrix::identity(lu.n))
    }

    /// Solves `self · X = b`.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        self.lu()?.solve(b)
    }
}

/// Packed LU factors with the row permutation applied to the input.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    odd_swaps: bool,
    min_pivot: f64,
    scale: f64,
}

impl Lu {
    pub fn is_numerically_singular(&self) -> bool {
        self.scale == 0.0 || self.min_pivot < ZERO_PIVOT_RTOL * self.scale
    }

    /// Plain determinant, no zero threshold.
    pub fn det(&self) -> f64 {
        let d: f64 = (0..self.n).map(|k| self.lu[k * self.n + k]).product();
        if self.odd_swaps {
            -d
        } else {
            d
        }
    }

    pub fn guardian_value(&self) -> GuardianValue {
        if self.is_numerically_singular() {
            return GuardianValue::ZERO;
        }
        let mut negative = self.odd_swaps;
        let mut log_magnitude = 0.0;
        for k in 0..self.n {
            let u = self.lu[k * self.n + k];
            if u < 0.0 {
                negative = !negative;
            }
            log_magnitude += num::ln(num::abs(u));
        }
        GuardianValue {
            sign: if negative { -1 } else { 1 },
            log_magnitude,
        }
    }

    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        let n = self.n;
        if b.rows != n {
            return Err(Error::DimensionMismatch {
                op: "solve",
                left: (n, n),
                right: b.shape(),
            });
        }
        if self.is_numerically_singular() {
            return Err(Error::Singular);
        }
        let m = b.cols;
        let mut x = Matrix::from_fn(n, m, |i, j| b[(self.perm[i], j)]);
        for c in 0..m {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= self.lu[i * n + k] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= self.lu[i * n + k] * x[(k, c)];
                }
                x[(i, c)] = s / self.lu[i * n + i];
            }
        }
        Ok(x)
    }
}

/// Determinant carried as a sign and a log-magnitude so that products of
/// large determinants never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardianValue {
    /// -1, 0 or +1.
    pub sign: i8,
    /// `ln |det|`; `-inf` when `sign == 0`.
    pub log_magnitude: f64,
}

impl GuardianValue {
    pub const ZERO: GuardianValue = GuardianValue {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub fn from_value(x: f64) -> Self {
        if x == 0.0 {
            GuardianValue::ZERO
        } else {
            GuardianValue {
                sign: if x < 0.0 { -1 } else { 1 },
                log_magnitude: num::ln(num::abs(x)),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Product of two determinants.
    pub fn product(self, other: GuardianValue) -> GuardianValue {
        if self.is_zero() || other.is_zero() {
            return GuardianValue::ZERO;
        }
        GuardianValue {
            sign: self.sign * other.sign,
            log_magnitude: self.log_magnitude + other.log_magnitude,
        }
    }

    /// The determinant as a plain float; may overflow to ±inf.
    pub fn value(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::from(self.sign) * num::exp(self.log_magnitude)
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `try_*`/`matmul` methods
// for fallible arithmetic on untrusted shapes.

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix add: shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix sub: shape mismatch")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix mul: shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

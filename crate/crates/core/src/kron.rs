//! Kronecker products, the Kronecker sum `A ⊕ A`, and row-stacking `vec`.
//!
//! `vec` stacks ROWS, not columns: `vec([[a, b], [c, d]]) = (a, b, c, d)ᵀ`.
//! With this convention `vec(AX) = (A ⊗ I) vec(X)` and
//! `vec(XAᵀ) = (I ⊗ A) vec(X)`, so `Ẋ = AX + XAᵀ` becomes
//! `d/dt vec(X) = (A ⊕ A) vec(X)`. Under column stacking the two Kronecker
//! factors would trade places.

use crate::{Error, Matrix, Result};

/// Block matrix `[a_ij · B]`.
pub fn kron_product(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Matrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `A ⊗ I_m + I_n ⊗ B` for square `a` (n×n) and `b` (m×m).
pub fn kron_sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    let m = b.require_square()?;
    Ok(Matrix::from_fn(n * m, n * m, |i, j| {
        let (ia, ib) = (i / m, i % m);
        let (ja, jb) = (j / m, j % m);
        let mut v = 0.0;
        if ib == jb {
            v += a[(ia, ja)];
        }
        if ia == ja {
            v += b[(ib, jb)];
        }
        v
    }))
}

/// Kronecker sum of `a` with itself, `A ⊗ I_n + I_n ⊗ A` (n² × n²).
pub fn kron_sum_self(a: &Matrix) -> Result<Matrix> {
    kron_sum(a, a)
}

/// Row-stacking vectorization: a (rows·cols) × 1 column.
pub fn vec_rows(x: &Matrix) -> Matrix {
    Matrix::column(x.as_slice())
}

/// Inverse of [`vec_rows`] for a target shape.
pub fn unvec_rows(v: &Matrix, rows: usize, cols: usize) -> Result<Matrix> {
    if v.cols() != 1 || v.rows() != rows * cols {
        return Err(Error::DimensionMismatch {
            op: "unvec_rows",
            left: v.shape(),
            right: (rows, cols),
        });
    }
    Matrix::new(rows, cols, v.as_slice().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal_products() {
        let eye2 = Matrix::identity(2);
        assert_eq!(kron_product(&eye2, &eye2), Matrix::identity(4));
        let p = kron_product(
            &Matrix::from_diag(&[1.0, 2.0]),
            &Matrix::from_diag(&[3.0, 4.0]),
        );
        assert_eq!(p, Matrix::from_diag(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn rectangular_product_shape() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0]]).unwrap();
        let b = Matrix::from_rows(&[[1.0], [-1.0]]).unwrap();
        let p = kron_product(&a, &b);
        assert_eq!(p.shape(), (2, 3));
        assert_eq!(p.as_slice(), &[1.0, 2.0, 3.0, -1.0, -2.0, -3.0]);
    }

    #[test]
    fn kron_sum_matches_definition() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let eye = Matrix::identity(2);
        let want = &kron_product(&a, &eye) + &kron_product(&eye, &a);
        assert_eq!(kron_sum_self(&a).unwrap(), want);
        assert_eq!(
            kron_sum_self(&Matrix::zeros(3, 3)).unwrap(),
            Matrix::zeros(9, 9)
        );
        assert_eq!(
            kron_sum_self(&Matrix::from_diag(&[1.0, 2.0])).unwrap(),
            Matrix::from_diag(&[2.0, 3.0, 3.0, 4.0])
        );
        assert!(kron_sum_self(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn vec_stacks_rows() {
        let a = Matrix::from_rows(&[[11.0, 12.0], [21.0, 22.0]]).unwrap();
        assert_eq!(vec_rows(&a).as_slice(), &[11.0, 12.0, 21.0, 22.0]);
        assert_eq!(vec_rows(&a).shape(), (4, 1));
        let row = Matrix::from_rows(&[[1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(vec_rows(&row).as_slice(), row.as_slice());
        let x = Matrix::from_fn(3, 4, |i, j| (i * 4 + j) as f64 - 5.5);
        assert_eq!(unvec_rows(&vec_rows(&x), 3, 4).unwrap(), x);
        assert!(unvec_rows(&vec_rows(&x), 4, 4).is_err());
    }
}

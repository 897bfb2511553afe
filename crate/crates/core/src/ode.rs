//! The matrix ODE `Ẋ = AX + XAᵀ` and its reductions.
//!
//! The full flow in row-stacked `vec` form is governed by `A ⊕ A`. Restricted
//! to symmetric `X`, the upper-triangular entries `w(X)` evolve under
//! `L_2(A)`; restricted to skew-symmetric `X`, the strictly upper entries
//! `v(X)` evolve under `A^[2]`.

use alloc::vec::Vec;

use crate::compound::{add_compound, mult_compound, LexIndex};
use crate::expm::expm;
use crate::schlaflian::lower_schlaflian;
use crate::{Error, Matrix, Result};

/// Relative tolerance for accepting a matrix as (skew-)symmetric.
pub const STRUCTURE_RTOL: f64 = 1e-8;

/// Default step count for [`matrix_ode_rk4`], adequate for `t <= 2` and
/// `‖A‖ <= 5`.
pub const DEFAULT_RK4_STEPS: usize = 1000;

/// Skew basis element `S_ij = E_ij - E_ji` for `i < j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkewBasisElement {
    pub i: usize,
    pub j: usize,
}

impl SkewBasisElement {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if !(i < j && j < n) {
            return Err(Error::OutOfRange {
                what: "skew basis index pair (i < j < n)",
                value: j as i64,
                min: i as i64 + 1,
                max: n as i64 - 1,
            });
        }
        Ok(SkewBasisElement { i, j })
    }

    pub fn matrix(&self, n: usize) -> Matrix {
        let mut s = Matrix::zeros(n, n);
        s[(self.i, self.j)] = 1.0;
        s[(self.j, self.i)] = -1.0;
        s
    }
}

fn require_same_square(a: &Matrix, x: &Matrix, op: &'static str) -> Result<usize> {
    let n = a.require_square()?;
    if x.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op,
            left: a.shape(),
            right: x.shape(),
        });
    }
    Ok(n)
}

/// `X(t) = e^{At} X(0) e^{Aᵀt}`.
pub fn matrix_ode_closed_form(a: &Matrix, x0: &Matrix, t: f64) -> Result<Matrix> {
    require_same_square(a, x0, "matrix_ode_closed_form")?;
    let e = expm(a, t)?;
    Ok(&(&e * x0) * &e.transpose())
}

/// Right-hand side `AX + XAᵀ`. Exactly symmetric (skew) for exactly
/// symmetric (skew) `X`: entries (i,j) and (j,i) add the same two sums.
pub fn matrix_ode_rhs(a: &Matrix, x: &Matrix) -> Matrix {
    let ax = a * x;
    let xat = x * &a.transpose();
    &ax + &xat
}

/// Classical fixed-step RK4 for `Ẋ = AX + XAᵀ` on `[0, t_end]`.
pub fn matrix_ode_rk4(a: &Matrix, x0: &Matrix, t_end: f64, steps: usize) -> Result<Matrix> {
    require_same_square(a, x0, "matrix_ode_rk4")?;
    if steps == 0 {
        return Err(Error::OutOfRange {
            what: "RK4 steps",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let h = t_end / steps as f64;
    let mut x = x0.clone();
    for _ in 0..steps {
        x = rk4_step(a, &x, h);
    }
    Ok(x)
}

/// RK4 trajectory including the initial state: `steps + 1` snapshots.
pub fn matrix_ode_rk4_trajectory(
    a: &Matrix,
    x0: &Matrix,
    t_end: f64,
    steps: usize,
) -> Result<Vec<Matrix>> {
    require_same_square(a, x0, "matrix_ode_rk4_trajectory")?;
    if steps == 0 {
        return Err(Error::OutOfRange {
            what: "RK4 steps",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let h = t_end / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(x0.clone());
    for s in 0..steps {
        let next = rk4_step(a, &out[s], h);
        out.push(next);
    }
    Ok(out)
}

fn rk4_step(a: &Matrix, x: &Matrix, h: f64) -> Matrix {
    let k1 = matrix_ode_rhs(a, x);
    let k2 = matrix_ode_rhs(a, &(x + &k1.scale(0.5 * h)));
    let k3 = matrix_ode_rhs(a, &(x + &k2.scale(0.5 * h)));
    let k4 = matrix_ode_rhs(a, &(x + &k3.scale(h)));
    let incr = &(&(&k1 + &k2.scale(2.0)) + &k3.scale(2.0)) + &k4;
    x + &incr.scale(h / 6.0)
}

/// `max |X - Xᵀ|` and `max |X + Xᵀ|`.
pub fn asymmetry(x: &Matrix) -> (f64, f64) {
    let n = x.rows();
    let mut sym = 0.0f64;
    let mut skew = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            sym = sym.max(libm::fabs(x[(i, j)] - x[(j, i)]));
            skew = skew.max(libm::fabs(x[(i, j)] + x[(j, i)]));
        }
    }
    (sym, skew)
}

/// `w(X) = (x11, x12, …, x1n, x22, …, xnn)` for symmetric `X`.
pub fn extract_w(x: &Matrix) -> Result<Vec<f64>> {
    let n = x.require_square()?;
    let dev = asymmetry(x).0;
    if dev > STRUCTURE_RTOL * (1.0 + x.max_abs()) {
        return Err(Error::Structure {
            what: "symmetric",
            deviation: dev,
        });
    }
    let mut w = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            w.push(x[(i, j)]);
        }
    }
    Ok(w)
}

/// `v(X) = (x12, x13, …, x1n, x23, …, x_{n-1,n})` for skew-symmetric `X`.
pub fn extract_v(x: &Matrix) -> Result<Vec<f64>> {
    let n = x.require_square()?;
    let dev = asymmetry(x).1;
    if dev > STRUCTURE_RTOL * (1.0 + x.max_abs()) {
        return Err(Error::Structure {
            what: "skew-symmetric",
            deviation: dev,
        });
    }
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push(x[(i, j)]);
        }
    }
    Ok(v)
}

/// Symmetric matrix with upper triangle `w`.
pub fn symmetric_from_w(w: &[f64]) -> Result<Matrix> {
    let n = (1..=w.len())
        .find(|&n| n * (n + 1) / 2 == w.len())
        .ok_or(Error::InvalidShape {
            rows: 0,
            cols: 0,
            len: w.len(),
        })?;
    let mut x = Matrix::zeros(n, n);
    let mut it = w.iter();
    for i in 0..n {
        for j in i..n {
            let v = *it.next().expect("length checked");
            x[(i, j)] = v;
            x[(j, i)] = v;
        }
    }
    Ok(x)
}

/// Skew-symmetric matrix of order `n` with strict upper triangle `v`.
pub fn skew_from_v(v: &[f64], n: usize) -> Result<Matrix> {
    if n == 0 || v.len() != n * (n - 1) / 2 {
        return Err(Error::InvalidShape {
            rows: n,
            cols: n,
            len: v.len(),
        });
    }
    let mut x = Matrix::zeros(n, n);
    let mut it = v.iter();
    for i in 0..n {
        for j in i + 1..n {
            let val = *it.next().expect("length checked");
            x[(i, j)] = val;
            x[(j, i)] = -val;
        }
    }
    Ok(x)
}

fn max_abs_vec_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| m.max(libm::fabs(x - y)))
}

fn apply(m: &Matrix, v: &[f64]) -> Vec<f64> {
    (m * &Matrix::column(v)).into_vec()
}

/// `max |w(X(t)) - e^{L_2(A) t} w(X(0))|`, with `X(t)` from the closed form.
pub fn check_prop6(a: &Matrix, x0_sym: &Matrix, t: f64) -> Result<f64> {
    require_same_square(a, x0_sym, "check_prop6")?;
    let w0 = extract_w(x0_sym)?;
    let wt = extract_w(&matrix_ode_closed_form(a, x0_sym, t)?)?;
    let reduced = apply(&expm(&lower_schlaflian(a, 2)?, t)?, &w0);
    Ok(max_abs_vec_diff(&wt, &reduced))
}

/// `max |v(X(t)) - e^{A^[2] t} v(X(0))|`, with `X(t)` from the closed form.
pub fn check_prop7(a: &Matrix, x0_skew: &Matrix, t: f64) -> Result<f64> {
    let n = require_same_square(a, x0_skew, "check_prop7")?;
    let v0 = extract_v(x0_skew)?;
    if n < 2 {
        return Ok(0.0);
    }
    let vt = extract_v(&matrix_ode_closed_form(a, x0_skew, t)?)?;
    let reduced = apply(&expm(&add_compound(a, 2)?, t)?, &v0);
    Ok(max_abs_vec_diff(&vt, &reduced))
}

/// The operator sending the (i,j) coordinate vector of the C(n,2) space to
/// `S_ij`, applied to an arbitrary vector: `Σ v_ij S_ij`.
pub fn skew_lift(v: &[f64], n: usize) -> Result<Matrix> {
    skew_from_v(v, n)
}

/// Residual between `L(A^[2] [e^i e^j]^(2))` and `A S_ij + S_ij Aᵀ`.
///
/// `[e^i e^j]^(2)` is computed as the 2-compound of the n × 2 matrix with
/// columns `e^i`, `e^j`, which is the coordinate vector of the pair (i, j).
pub fn check_lemma1(a: &Matrix, i: usize, j: usize) -> Result<f64> {
    let n = a.require_square()?;
    let s = SkewBasisElement::new(i, j, n)?;
    let mut cols = Matrix::zeros(n, 2);
    cols[(i, 0)] = 1.0;
    cols[(j, 1)] = 1.0;
    let coord = mult_compound(&cols, 2)?;
    debug_assert_eq!(
        LexIndex::new(n, 2)?.rank(&[i, j]),
        coord.as_slice().iter().position(|&x| x == 1.0)
    );
    let image = &add_compound(a, 2)? * &coord;
    let lhs = skew_lift(image.as_slice(), n)?;
    let sij = s.matrix(n);
    let rhs = matrix_ode_rhs(a, &sij);
    lhs.max_abs_diff(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a3() -> Matrix {
        Matrix::from_rows(&[[-0.5, 1.0, 0.2], [0.3, -1.0, 0.7], [-0.4, 0.1, 0.25]]).unwrap()
    }

    #[test]
    fn closed_form_trivial_cases() {
        let x0 = Matrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]).unwrap();
        let at0 = matrix_ode_closed_form(&a3(), &x0, 0.0).unwrap();
        assert_eq!(at0, x0);
        let z = matrix_ode_closed_form(&Matrix::zeros(3, 3), &x0, 5.0).unwrap();
        assert_eq!(z, x0);
        let (al, be) = (0.3, -0.8);
        let ones = Matrix::from_fn(2, 2, |_, _| 1.0);
        let x = matrix_ode_closed_form(&Matrix::from_diag(&[al, be]), &ones, 1.3).unwrap();
        let lam = [al, be];
        for i in 0..2 {
            for j in 0..2 {
                let want = libm::exp((lam[i] + lam[j]) * 1.3);
                assert!((x[(i, j)] - want).abs() < 1e-14 * want);
            }
        }
        assert!(matrix_ode_closed_form(&a3(), &Matrix::identity(2), 1.0).is_err());
    }

    #[test]
    fn rk4_trivial_cases() {
        let x0 = Matrix::from_fn(3, 3, |i, j| (i + 2 * j) as f64);
        assert_eq!(
            matrix_ode_rk4(&Matrix::zeros(3, 3), &x0, 1.0, 10).unwrap(),
            x0
        );
        assert!(matrix_ode_rk4(&a3(), &x0, 1.0, 0).is_err());
        let traj = matrix_ode_rk4_trajectory(&a3(), &x0, 1.0, 4).unwrap();
        assert_eq!(traj.len(), 5);
        assert_eq!(traj[4], matrix_ode_rk4(&a3(), &x0, 1.0, 4).unwrap());
    }

    #[test]
    fn w_and_v_orderings() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [2.0, 3.0]]).unwrap();
        assert_eq!(extract_w(&x).unwrap(), vec![1.0, 2.0, 3.0]);
        let w = extract_w(&Matrix::identity(3)).unwrap();
        assert_eq!(w, vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        let s = Matrix::from_rows(&[[0.0, 1.0, 2.0], [-1.0, 0.0, 3.0], [-2.0, -3.0, 0.0]]).unwrap();
        assert_eq!(extract_v(&s).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(extract_v(&Matrix::zeros(4, 4)).unwrap(), vec![0.0; 6]);
        assert_eq!(skew_from_v(&[1.0, 2.0, 3.0], 3).unwrap(), s);
        let sym = Matrix::from_rows(&[[1.0, 4.0, 5.0], [4.0, 2.0, 6.0], [5.0, 6.0, 3.0]]).unwrap();
        assert_eq!(symmetric_from_w(&extract_w(&sym).unwrap()).unwrap(), sym);
    }

    #[test]
    fn structure_violations() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [2.5, 3.0]]).unwrap();
        assert!(matches!(extract_w(&x), Err(Error::Structure { .. })));
        assert!(matches!(extract_v(&x), Err(Error::Structure { .. })));
        assert!(symmetric_from_w(&[1.0, 2.0]).is_err());
        assert!(skew_from_v(&[1.0, 2.0], 3).is_err());
    }

    #[test]
    fn reductions_at_zero_time() {
        let sym =
            Matrix::from_rows(&[[1.0, 0.5, 0.0], [0.5, 2.0, -1.0], [0.0, -1.0, 0.3]]).unwrap();
        assert!(check_prop6(&a3(), &sym, 0.0).unwrap() < 1e-15);
        let skew = skew_from_v(&[0.4, -1.0, 2.0], 3).unwrap();
        assert!(check_prop7(&a3(), &skew, 0.0).unwrap() < 1e-15);
    }

    #[test]
    fn symmetric_reduction_diagonal_entrywise() {
        let lam = [-0.3, 0.2, -1.1];
        let a = Matrix::from_diag(&lam);
        let sym =
            Matrix::from_rows(&[[1.0, 0.5, 0.2], [0.5, 2.0, -1.0], [0.2, -1.0, 0.3]]).unwrap();
        let t = 0.9;
        let xt = matrix_ode_closed_form(&a, &sym, t).unwrap();
        let w = extract_w(&xt).unwrap();
        let w0 = extract_w(&sym).unwrap();
        let mut k = 0;
        for i in 0..3 {
            for j in i..3 {
                let want = libm::exp((lam[i] + lam[j]) * t) * w0[k];
                assert!((w[k] - want).abs() < 1e-14);
                k += 1;
            }
        }
        assert!(check_prop6(&a, &sym, t).unwrap() < 1e-13);
    }

    #[test]
    fn skew_reduction_two_by_two_is_trace_flow() {
        let a = Matrix::from_rows(&[[0.4, -2.0], [1.5, -1.0]]).unwrap();
        let x0 = skew_from_v(&[0.7], 2).unwrap();
        let t = 1.2;
        let xt = matrix_ode_closed_form(&a, &x0, t).unwrap();
        let want = libm::exp(a.trace() * t) * 0.7;
        assert!((extract_v(&xt).unwrap()[0] - want).abs() < 1e-14);
        assert!(check_prop7(&a, &x0, t).unwrap() < 1e-14);
    }

    #[test]
    fn skew_basis_action_trivial_cases() {
        for n in 2..=5 {
            for i in 0..n {
                for j in i + 1..n {
                    assert_eq!(check_lemma1(&Matrix::identity(n), i, j).unwrap(), 0.0);
                    let d = Matrix::from_fn(n, n, |r, c| if r == c { r as f64 - 1.5 } else { 0.0 });
                    assert_eq!(check_lemma1(&d, i, j).unwrap(), 0.0);
                }
            }
        }
        assert!(check_lemma1(&Matrix::identity(3), 2, 1).is_err());
        assert!(check_lemma1(&Matrix::identity(3), 1, 3).is_err());
    }

    #[test]
    fn skew_basis_element() {
        let s = SkewBasisElement::new(0, 2, 3).unwrap().matrix(3);
        assert_eq!(&s + &s.transpose(), Matrix::zeros(3, 3));
        assert!(SkewBasisElement::new(1, 1, 3).is_err());
    }
}

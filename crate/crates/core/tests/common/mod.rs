#![allow(dead_code)]

use guardrep_core::representations::similarity_transform;
use guardrep_core::{Complex, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Triple-loop product, independent of `Matrix::matmul`.
pub fn naive_matmul(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0.0;
            for l in 0..a.cols() {
                s += a[(i, l)] * b[(l, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &Matrix) -> f64 {
    let n = a.rows();
    assert_eq!(n, a.cols());
    match n {
        0 => 1.0,
        1 => a[(0, 0)],
        _ => (0..n)
            .map(|j| {
                let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let rows: Vec<usize> = (1..n).collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * a[(0, j)] * cofactor_det(&a.submatrix(&rows, &rest))
            })
            .sum(),
    }
}

/// All k-subsets of 0..n in lexicographic order, by recursion.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing p-tuples over 0..n in lexicographic order.
pub fn multisets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// `T D T⁻¹` with `D` block diagonal holding the requested spectrum and
/// `T = R + (n + 1) I`.
pub fn planted(rng: &mut impl Rng, n: usize, re_range: (f64, f64)) -> (Matrix, Vec<Complex>) {
    let mut d = Matrix::zeros(n, n);
    let mut eig = Vec::new();
    let mut at = 0;
    while at < n {
        let re = rng.gen_range(re_range.0..=re_range.1);
        if n - at >= 2 && rng.gen_bool(0.5) {
            let im = rng.gen_range(0.2..=2.0);
            d[(at, at)] = re;
            d[(at + 1, at + 1)] = re;
            d[(at, at + 1)] = im;
            d[(at + 1, at)] = -im;
            eig.push(Complex::new(re, im));
            eig.push(Complex::new(re, -im));
            at += 2;
        } else {
            d[(at, at)] = re;
            eig.push(Complex::real(re));
            at += 1;
        }
    }
    let t = &uniform(rng, n, n) + &Matrix::identity(n).scale((n + 1) as f64);
    (similarity_transform(&d, &t).unwrap(), eig)
}

pub fn pairing_tol(a: &Matrix) -> f64 {
    1e-7 * (1.0 + a.norm1())
}

//! Seeded random matrices for the verification suites and tests.
//!
//! Every generator draws from a caller-supplied RNG; [`trial_rng`] gives each
//! (seed, suite, trial) triple its own ChaCha stream so any single instance
//! can be regenerated in isolation.

use guardrep_core::representations::similarity_transform;
use guardrep_core::{Complex, Matrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | (trial & 0xffff_ffff));
    rng
}

/// Entries uniform in `[-1, 1)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Integer entries in `[-bound, bound]`.
pub fn integer<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i32) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..=bound) as f64)
}

pub fn symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let u = uniform(rng, n, n);
    Matrix::from_fn(n, n, |i, j| if i <= j { u[(i, j)] } else { u[(j, i)] })
}

pub fn skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let u = uniform(rng, n, n);
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => u[(i, j)],
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Greater => -u[(j, i)],
    })
}

/// `R + (n + 1) I` with `R` uniform: strictly diagonally dominant, so
/// invertible with condition number bounded independently of the draw.
pub fn well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    &uniform(rng, n, n) + &Matrix::identity(n).scale((n + 1) as f64)
}

/// A matrix with a prescribed spectrum, `T D T⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Planted {
    pub matrix: Matrix,
    pub eigenvalues: Vec<Complex>,
}

fn planted_from_blocks<R: Rng + ?Sized>(rng: &mut R, n: usize, blocks: &[(f64, f64)]) -> Planted {
    let mut d = Matrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut at = 0;
    for &(re, im) in blocks {
        if im == 0.0 {
            d[(at, at)] = re;
            eigenvalues.push(Complex::real(re));
            at += 1;
        } else {
            d[(at, at)] = re;
            d[(at + 1, at + 1)] = re;
            d[(at, at + 1)] = im;
            d[(at + 1, at)] = -im;
            eigenvalues.push(Complex::new(re, im));
            eigenvalues.push(Complex::new(re, -im));
            at += 2;
        }
    }
    debug_assert_eq!(at, n);
    let t = well_conditioned(rng, n);
    let matrix = similarity_transform(&d, &t).expect("diagonally dominant T is invertible");
    Planted {
        matrix,
        eigenvalues,
    }
}

/// Stable blocks filling `n` slots: real parts in `[-2, -margin]`,
/// imaginary parts in `[0.2, 2]` for 2×2 blocks.
fn stable_blocks<R: Rng + ?Sized>(
    rng: &mut R,
    mut n: usize,
    margin: f64,
    out: &mut Vec<(f64, f64)>,
) {
    while n > 0 {
        let re = rng.gen_range(-2.0..=-margin);
        if n >= 2 && rng.gen_bool(0.5) {
            out.push((re, rng.gen_range(0.2..=2.0)));
            n -= 2;
        } else {
            out.push((re, 0.0));
            n -= 1;
        }
    }
}

/// Hurwitz with every eigenvalue satisfying `Re λ <= -margin`.
pub fn hurwitz<R: Rng + ?Sized>(rng: &mut R, n: usize, margin: f64) -> Planted {
    let mut blocks = Vec::new();
    stable_blocks(rng, n, margin, &mut blocks);
    planted_from_blocks(rng, n, &blocks)
}

/// On the stability boundary: one pair `±iβ`, `β ∈ [0.5, 2]`, the rest with
/// `Re λ <= -margin`. Needs `n >= 2`.
pub fn boundary<R: Rng + ?Sized>(rng: &mut R, n: usize, margin: f64) -> Planted {
    assert!(n >= 2, "a conjugate pair needs n >= 2");
    let mut blocks = vec![(0.0, rng.gen_range(0.5..=2.0))];
    stable_blocks(rng, n - 2, margin, &mut blocks);
    planted_from_blocks(rng, n, &blocks)
}

/// Arbitrary real spectrum with complex pairs, real parts in `[-2, 2]`.
pub fn general_planted<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Planted {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let re = rng.gen_range(-2.0..=2.0);
        if left >= 2 && rng.gen_bool(0.5) {
            blocks.push((re, rng.gen_range(0.2..=2.0)));
            left -= 2;
        } else {
            blocks.push((re, 0.0));
            left -= 1;
        }
    }
    planted_from_blocks(rng, n, &blocks)
}
